import pytest

from wepkit.exact import GMat
from wepkit.gen import build_corpus
from wepkit.weighted import WPair, classify

CORPUS_SEED = 20240601

# criterion number -> (title, passed); filled by test_acceptance
ACCEPTANCE = {}


def M(*rows):
    return GMat([list(r) for r in rows])


def pair(a, w=None):
    a = a if isinstance(a, GMat) else GMat(a)
    w = GMat.identity(a.n) if w is None else (w if isinstance(w, GMat) else GMat(w))
    return WPair(a, w)


@pytest.fixture(scope="session")
def corpus():
    return build_corpus(200, seed=CORPUS_SEED, max_n=5, magnitude=10)


@pytest.fixture(scope="session")
def classified(corpus):
    return [(inst, classify(inst.pair)) for inst in corpus]


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        title, ok = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {title}")
