"""
Size limits enforced before allocation-heavy work.

The brute-force oracles and the front ends refuse sizes beyond these bounds
instead of exhausting memory.
"""

import logging

from utils.core import SizeLimitError

# Configure logger
logger = logging.getLogger(__name__)

# Brute-force oracle over all RGFs of length n (b_11 = 678570)
ORACLE_MAX_N = 11

# Filtered enumerations (set partitions, T_n, separated, non-crossing merging-free)
ENUMERATION_MAX_N = 12

# Dynamic-programming generation through the CLI and the HTTP API
GEN_MAX_N = 12

# Largest exhaustive bound accepted by `verify`
VERIFY_MAX_N = 10

# Per-variable truncation bound for power series
SERIES_MAX_BOUND = 20

# Working precision (decimal digits) of the Dobinski estimate
DOBINSKI_DPS = 50

# Largest n per count table; the a-table is cubic in n
COUNT_MAX_N = {
    "r": 500,
    "h": 500,
    "a": 60,
    "l": 500,
    "bell": 500,
    "stirling": 500,
    "ncmf": 500,
}


def check_limit(name, value, limit):
    """
    Reject a size argument above its limit

    Args:
        name: What is being limited (used in the message)
        value: Requested size
        limit: Largest accepted size
    """
    if value > limit:
        logger.warning(f"Rejected {name}={value}: limit is {limit}")
        raise SizeLimitError(f"{name}={value} exceeds the limit of {limit}")
