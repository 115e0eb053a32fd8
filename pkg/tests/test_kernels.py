"""The compiled and the pure-Python kernels must agree exactly."""

import importlib
import os
import subprocess
import sys
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ccvar import _backend, _pykernels
from ccvar.balg import BooleanAlgebra
from ccvar.bset import conditioned_disjunction, enumerate_bsets, free_bset
from ccvar.matched import b_as_bmset, extract_from_endos, m_as_bmset, terminal_bmset
from ccvar.matched.enumerate import enumerate_bmsets
from ccvar.oracle import naive_filter

try:
    from ccvar import _kernels as compiled
except ImportError:  # pragma: no cover
    compiled = None

BACKENDS = [pytest.param(_pykernels, id="python"),
            pytest.param(compiled, id="cython",
                         marks=pytest.mark.skipif(compiled is None, reason="extension not built"))]

B2 = BooleanAlgebra(2)
BSETS = [X for n in range(1, 5) for X in enumerate_bsets(B2, n)] + [conditioned_disjunction(B2),
                                                                     free_bset(B2, 2).bset]
E2 = extract_from_endos(2)
BMSETS = [terminal_bmset(E2), m_as_bmset(E2), b_as_bmset(E2)] + enumerate_bmsets(E2, 4)


def bm_args(X, Y):
    M = E2.monoid
    return (X.carrier, Y.carrier, X.bset.labels, Y.bset.labels,
            [X.maction.table[m] for m in M.elements()], [Y.maction.table[m] for m in M.elements()])


def test_compiled_is_selected():
    if compiled is not None and os.environ.get("CCVAR_PURE_PYTHON", "") != "1":
        assert _backend.NAME == "cython"


def test_env_forces_python():
    code = "from ccvar import _backend; print(_backend.NAME)"
    env = dict(os.environ, CCVAR_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@pytest.mark.parametrize("K", BACKENDS)
def test_bset_search_matches_oracle(K):
    for X, Y in product(BSETS, repeat=2):
        if Y.carrier ** X.carrier > 10 ** 5:
            continue
        got = K.search_homs(X.carrier, Y.carrier, X.labels, Y.labels, [], [])
        want = naive_filter(X.carrier, Y.carrier, (), [(X.action[b], Y.action[b]) for b in B2.elements()])
        assert list(got) == want


@pytest.mark.parametrize("K", BACKENDS)
def test_bm_search_matches_oracle(K):
    M = E2.monoid
    for X, Y in product(BMSETS, repeat=2):
        got = K.search_homs(*bm_args(X, Y))
        want = naive_filter(X.carrier, Y.carrier,
                            [(X.maction.table[m], Y.maction.table[m]) for m in M.elements()],
                            [(X.bset.action[b], Y.bset.action[b]) for b in E2.algebra.elements()])
        assert list(got) == want


@pytest.mark.parametrize("K", BACKENDS)
def test_limit_and_allowed(K):
    X = Y = conditioned_disjunction(B2)
    full = K.search_homs(4, 4, X.labels, Y.labels, [], [])
    assert list(K.search_homs(4, 4, X.labels, Y.labels, [], [], None, 3)) == full[:3]
    allowed = [[1], [0, 1, 2, 3], [0, 1, 2, 3], [2]]
    pinned = K.search_homs(4, 4, X.labels, Y.labels, [], [], allowed)
    assert list(pinned) == [f for f in full if f[0] == 1 and f[3] == 2]


@pytest.mark.skipif(compiled is None, reason="extension not built")
@settings(max_examples=60, deadline=None)
@given(st.sampled_from(range(len(BMSETS))), st.sampled_from(range(len(BMSETS))),
       st.lists(st.integers(0, 15), min_size=0, max_size=3))
def test_backends_agree_with_pins(i, j, pins):
    X, Y = BMSETS[i], BMSETS[j]
    allowed = [list(range(Y.carrier)) for _ in range(X.carrier)]
    for p in pins:
        x = p % X.carrier
        allowed[x] = [p % Y.carrier]
    args = bm_args(X, Y)
    assert list(compiled.search_homs(*args, allowed)) == list(_pykernels.search_homs(*args, allowed))


@pytest.mark.parametrize("order", [None, "auto"])
def test_search_order_invariant(order):
    for X, Y in product(BMSETS[:6], repeat=2):
        a = _backend.search_homs(*bm_args(X, Y))
        b = _backend.search_homs(*bm_args(X, Y), order=order)
        assert list(a) == list(b)


@pytest.mark.parametrize("K", BACKENDS)
def test_bset_axiom_failure(K):
    for X in BSETS:
        assert K.bset_axiom_failure(X.action, B2.top) is None
    X = conditioned_disjunction(B2)
    for b, x, y in product(range(4), repeat=3):
        t = [[list(r) for r in layer] for layer in X.action]
        t[b][x][y] = (t[b][x][y] + 1) % 4
        r1 = K.bset_axiom_failure(t, B2.top)
        r2 = _pykernels.bset_axiom_failure(t, B2.top)
        assert r1 is not None and tuple(r1) == tuple(r2)


def test_reload_falls_back(monkeypatch):
    monkeypatch.setenv("CCVAR_PURE_PYTHON", "1")
    mod = importlib.reload(_backend)
    try:
        assert mod.NAME == "python" and mod.kernels is _pykernels
    finally:
        monkeypatch.delenv("CCVAR_PURE_PYTHON")
        importlib.reload(_backend)
