import pytest

from src.errors import InvalidInstance, InvalidPartition, InvalidSequence
from src.helper import parse_partition, parse_sequence, split_instance
from src.partition_core import KostkaPair
from src.render import render_pair, young_diagram


def test_parse_partition():
    assert parse_partition("4, 2,1") == (4, 2, 1)
    assert parse_partition("(3,3)") == (3, 3)
    assert parse_partition("∅") == ()
    with pytest.raises(InvalidPartition):
        parse_partition("3,x")
    with pytest.raises(InvalidPartition):
        parse_partition("1,2")


def test_parse_sequence():
    assert parse_sequence("3,2,1,-2,1,-2,-1,-1") == [3, 2, 1, -2, 1, -2, -1, -1]
    with pytest.raises(InvalidSequence):
        parse_sequence("1,,-1")


def test_split_instance():
    assert split_instance("3,2,1 : 4") == ([3, 2, 1], 4)
    with pytest.raises(InvalidInstance):
        split_instance("3,2,1")
    with pytest.raises(InvalidInstance):
        split_instance("3,2 : b")


def test_render_pair_side_by_side():
    assert young_diagram(parse_partition("")) == ["∅"]
    lines = render_pair(KostkaPair((2,), (1, 1), 2)).splitlines()
    assert lines == ["□□   □", "     □"]
