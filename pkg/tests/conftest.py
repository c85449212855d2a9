"""Shared spec builders for the test suite."""

import pytest

from reebforge import GraphSpec, validated


def circle_spec(multiplicities, dimension=2, handles=(), **kw):
    return GraphSpec(mode="circle", vertices=len(multiplicities),
                     multiplicities=tuple(multiplicities),
                     dimension=dimension, handles=tuple(handles), **kw)


def line_spec(multiplicities, dimension=2):
    return GraphSpec(mode="line", vertices=len(multiplicities) + 1,
                     multiplicities=tuple(multiplicities),
                     dimension=dimension)


def torus_spec():
    return GraphSpec(mode="circle", vertices=0, multiplicities=(),
                     dimension=2)


# the named corpus: every spec here must synthesize, sweep, and verify
NAMED_CORPUS = [
    ("(2,2,2)", circle_spec((2, 2, 2))),
    ("(2,2,1)", circle_spec((2, 2, 1))),
    ("(2,1,2)", circle_spec((2, 1, 2))),
    ("k=0", torus_spec()),
]

HANDLE_CORPUS = [
    ("m5 stage1", circle_spec((2, 2, 2), dimension=5,
                              handles=(((1, 1), (1, 0)),))),
    ("m5 rescue", circle_spec((1, 1, 2), dimension=5,
                              handles=(((2, 1), (1, 1)),))),
    ("m7 mixed", circle_spec((2, 1, 1), dimension=7,
                             handles=(((2, 1), (1, 0, 1)),))),
]

LINE_CORPUS = [
    ("line (1,2,1)", line_spec((1, 2, 1))),
    ("line (1,3,2,1)", line_spec((1, 3, 2, 1))),
]


@pytest.fixture(scope="session")
def corpus_models():
    """Synthesized models for every corpus spec, built once."""
    from reebforge import synthesize
    out = {}
    for name, spec in NAMED_CORPUS + HANDLE_CORPUS + LINE_CORPUS:
        out[name] = synthesize(validated(spec))
    return out
