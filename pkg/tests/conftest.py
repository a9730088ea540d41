import pytest

from markofflab import matseq, realfield


@pytest.fixture(scope="session")
def seq():
    """Canonical sequence, shared across the whole run; extended on demand."""
    return matseq.canonical_sequence(16)


@pytest.fixture(scope="session")
def seq40(seq):
    seq.extend(40)
    return seq


@pytest.fixture(scope="session")
def policy16(seq):
    seq.extend(22)
    return realfield.PrecisionPolicy.for_kmax(seq, 16)


@pytest.fixture(scope="session")
def policy20(seq):
    seq.extend(26)
    return realfield.PrecisionPolicy.for_kmax(seq, 20)
