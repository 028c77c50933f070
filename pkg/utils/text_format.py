"""
Text Format Module

Bit-exact text and JSON encodings of the combinatorial objects:
- SetPartition: blocks joined by "/", elements joined by "," (e.g. 1,4/2,5,8/3,7/6)
- Permutation and RgfWord: integers joined by "," (e.g. 1,5,2,6,9,3,8,4,7)

No whitespace is accepted. JSON renders a partition as an array of arrays and
a permutation or RGF as a flat array.
"""

import logging
import re

from utils.bijections import Insertion
from utils.core import InvalidObjectError, Permutation, RgfWord, SetPartition

# Configure logger
logger = logging.getLogger(__name__)

_WORD = r"[1-9][0-9]*(?:,[1-9][0-9]*)*"
WORD_PATTERN = re.compile(_WORD)
PARTITION_PATTERN = re.compile(rf"{_WORD}(?:/{_WORD})*")
TARGET_PATTERN = re.compile(r"[1-9][0-9]*")


def _split_word(text):
    return tuple(int(token) for token in text.split(","))


def parse_partition(text):
    """
    Parse a set partition in block representation

    Args:
        text: String such as "1,3,8/2/4,7/5,6"

    Returns:
        SetPartition: the parsed partition
    """
    if not isinstance(text, str) or not PARTITION_PATTERN.fullmatch(text):
        raise InvalidObjectError(f"malformed set partition {text!r}")
    return SetPartition(tuple(_split_word(block) for block in text.split("/")))


def parse_permutation(text):
    """Parse a permutation such as "1,5,2,6,9,3,8,4,7" """
    if not isinstance(text, str) or not WORD_PATTERN.fullmatch(text):
        raise InvalidObjectError(f"malformed permutation {text!r}")
    return Permutation(_split_word(text))


def parse_rgf(text):
    """Parse a restricted growth function such as "1,2,1,3,4,4,3,1" """
    if not isinstance(text, str) or not WORD_PATTERN.fullmatch(text):
        raise InvalidObjectError(f"malformed restricted growth function {text!r}")
    return RgfWord(_split_word(text))


def to_json(obj):
    """JSON-ready rendering of a partition, permutation or RGF"""
    if isinstance(obj, SetPartition):
        return [list(block) for block in obj.blocks]
    if isinstance(obj, Permutation):
        return list(obj.word)
    if isinstance(obj, RgfWord):
        return list(obj.letters)
    raise TypeError(f"no JSON encoding for {type(obj).__name__}")


def parse_target(text):
    """Parse an rlmin-insert target: "end" or a positive integer"""
    if text == "end":
        return Insertion.END
    if not isinstance(text, str) or not TARGET_PATTERN.fullmatch(text):
        raise InvalidObjectError(f"malformed insertion target {text!r}")
    return int(text)


PARSERS = {
    "partition": parse_partition,
    "permutation": parse_permutation,
    "rgf": parse_rgf,
}
