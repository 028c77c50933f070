from datetime import datetime

from app import db

class CountTableRecord(db.Model):
    """Cached count table, keyed by table name and nmax"""
    __tablename__ = "count_table_record"
    __table_args__ = (db.UniqueConstraint("kind", "nmax"),)

    id = db.Column(db.Integer, primary_key=True)
    kind = db.Column(db.String(20), nullable=False)  # r, h, a, l, bell, stirling, ncmf
    nmax = db.Column(db.Integer, nullable=False)

    values = db.Column(db.JSON, nullable=False)  # CountTable.to_jsonable()
    created_at = db.Column(db.DateTime, default=datetime.utcnow)

    def __repr__(self):
        return f'<CountTableRecord {self.kind} n<={self.nmax}>'

class VerificationRun(db.Model):
    """One execution of a verification suite"""
    id = db.Column(db.Integer, primary_key=True)
    suite = db.Column(db.String(20), nullable=False)
    nmax = db.Column(db.Integer, nullable=False)
    passed = db.Column(db.Boolean, nullable=False)
    results = db.Column(db.JSON, nullable=False)  # list of CheckResult.to_jsonable()
    created_at = db.Column(db.DateTime, default=datetime.utcnow)

    def to_dict(self):
        return {
            "id": self.id,
            "suite": self.suite,
            "nmax": self.nmax,
            "passed": self.passed,
            "results": self.results,
            "created_at": self.created_at.isoformat() if self.created_at else None,
        }

    def __repr__(self):
        return f'<VerificationRun {self.suite} nmax={self.nmax} passed={self.passed}>'
