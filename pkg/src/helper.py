import re
from typing import List

from src.errors import InvalidInstance, InvalidPartition, InvalidSequence
from src.partition_core import Partition


def _integers(text: str, error) -> List[int]:
    text = text.strip()
    if not text or text in ("()", "∅", "0"):
        return []
    try:
        return [int(tok) for tok in re.split(r"\s*,\s*", text.strip("()"))]
    except ValueError:
        raise error(f"cannot read integers from {text!r}") from None


#Parse "4,2,1" into a partition
def parse_partition(text: str) -> Partition:
    return Partition(_integers(text, InvalidPartition))


#Parse "3,2,1,-2,1,-2" into a signed sequence
def parse_sequence(text: str) -> List[int]:
    return _integers(text, InvalidSequence)


def split_instance(text: str):
    """
    Read "a1,a2,...,ad : b" into (values, target) without validating them.
    """
    if ":" not in text:
        raise InvalidInstance(f"expected 'a1,a2,...,ad : b', got {text!r}")
    values, target = text.split(":", 1)
    try:
        b = int(target.strip())
    except ValueError:
        raise InvalidInstance(f"target {target.strip()!r} is not an integer") from None
    return _integers(values, InvalidInstance), b
