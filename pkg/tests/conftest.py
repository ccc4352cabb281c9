from __future__ import annotations

import pytest

from toricjets.corpus import builtin_corpus
from toricjets.polytope import is_smooth


@pytest.fixture(scope="session")
def corpus():
    return builtin_corpus()


@pytest.fixture(scope="session")
def smooth_corpus(corpus):
    return [(spec, p) for spec, p in corpus if is_smooth(p)]


ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record(criterion: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[criterion] = (ok, detail)
    print(f"acceptance {criterion}: {'PASS' if ok else 'FAIL'} ({detail})")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
