import pytest

from conftest import GOLDEN
from dnnf_forge.cnf import parse_dimacs, write_dimacs
from dnnf_forge.nnf import parse_nnf, write_nnf

CNF_FILES = sorted(p.name for p in GOLDEN.glob("*.cnf"))
NNF_FILES = sorted(p.name for p in GOLDEN.glob("*.nnf"))


def test_corpus_size():
    assert len(CNF_FILES) + len(NNF_FILES) >= 20


@pytest.mark.parametrize("name", CNF_FILES)
def test_dimacs_byte_roundtrip(name):
    data = (GOLDEN / name).read_bytes()
    assert write_dimacs(parse_dimacs(data)) == data


@pytest.mark.parametrize("name", NNF_FILES)
def test_nnf_byte_roundtrip(name):
    data = (GOLDEN / name).read_bytes()
    dag = parse_nnf(data)
    assert write_nnf(dag) == data
    assert parse_nnf(write_nnf(dag)) == dag
