import os
import tempfile

import pytest

# The app reads DATABASE_URL at import time
os.environ["DATABASE_URL"] = "sqlite:///" + os.path.join(tempfile.mkdtemp(prefix="runsort-"), "test.db")


@pytest.fixture
def client():
    from main import app

    app.config["TESTING"] = True
    with app.test_client() as client:
        yield client
