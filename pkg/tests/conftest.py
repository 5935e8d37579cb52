import pytest

from tripnet import Triplet, TripletSet

FOUR_TAXA = "kl|j kl|i jk|i jl|i"
FIFTEEN = "ij|l jk|i kl|j kl|i no|m lo|k jl|o mn|l mn|j no|k mo|i jk|n ij|o ik|m il|n"
SIX_TAXA = """\
2 3|1
4 1|2
5 2|1
2 6|1
3 4|1
1 3|5
1 3|6
5 4|1
4 6|1
5 6|1
3 4|2
3 5|2
2 6|3
4 5|2
2 4|6
5 6|2
3 4|5
3 4|6
5 6|3
5 6|4
"""


def ts(text: str) -> TripletSet:
    """``"ij|k jk|i"``, or comma separated ``"t0 t1|t2, ..."`` for longer names."""
    items = text.split(",") if "," in text else text.split()
    return TripletSet(Triplet.parse(x) for x in items)


@pytest.fixture
def four_taxa():
    return ts(FOUR_TAXA)


@pytest.fixture
def fifteen():
    return ts(FIFTEEN)


@pytest.fixture
def six_taxa():
    from tripnet import parse_triplets

    return parse_triplets(SIX_TAXA)
