import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fujita_lab import _kernels_py, kernels

BACKENDS = kernels.backends()


def test_backend_reported():
    assert kernels.BACKEND in BACKENDS
    assert "python" in BACKENDS


def test_compiled_backend_built():
    # the extension is part of the normal install; a missing build is worth knowing about
    assert "compiled" in BACKENDS


def _all_agree(fn_name, *args):
    results = {name: getattr(mod, fn_name)(*args) for name, mod in BACKENDS.items()}
    ref = results["python"]
    for name, r in results.items():
        assert r == ref, name
    return ref


@settings(max_examples=300, deadline=None)
@given(st.lists(st.integers(-5, 20), max_size=12).map(sorted), st.integers(0, 4), st.integers(-5, 40))
def test_tuples_with_sum_at_most(weights, length, bound):
    got = _all_agree("tuples_with_sum_at_most", weights, length, bound)
    from itertools import combinations_with_replacement
    brute = [c for c in combinations_with_replacement(range(len(weights)), length)
             if sum(weights[i] for i in c) <= bound]
    if length > 0 or bound >= 0:
        assert got == brute


def test_unsorted_weights_rejected():
    for mod in BACKENDS.values():
        with pytest.raises(ValueError):
            mod.tuples_with_sum_at_most([3, 1], 2, 10)


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 3).flatmap(lambda k: st.tuples(
    st.lists(st.lists(st.integers(-6, 6), min_size=k, max_size=k), max_size=8),
    st.integers(1, 3),
    st.lists(st.integers(-8, 8), min_size=k, max_size=k),
)))
def test_first_failing_tuple(args):
    values, length, offset = args
    _all_agree("first_failing_tuple", values, length, offset)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 3).flatmap(lambda r: st.tuples(
    st.lists(st.lists(st.integers(-4, 4), min_size=r, max_size=r), min_size=r, max_size=r),
    st.lists(st.lists(st.integers(-3, 3), min_size=r, max_size=r), max_size=3),
    st.integers(1, 4),
)))
def test_min_form_in_box(args):
    rows, functionals, bound = args
    r = len(rows)
    gram = [[rows[min(i, j)][max(i, j)] for j in range(r)] for i in range(r)]
    got = _all_agree("min_form_in_box", gram, functionals, bound)
    if got is not None:
        q, x = got
        assert all(abs(v) <= bound for v in x)
        assert sum(x[i] * gram[i][j] * x[j] for i in range(r) for j in range(r)) == q > 0


def test_dispatch_uses_selected_backend():
    assert kernels.tuples_with_sum_at_most is getattr(BACKENDS[kernels.BACKEND], "tuples_with_sum_at_most")


def test_pure_env_forces_python(monkeypatch):
    import importlib
    monkeypatch.setenv("FUJITA_LAB_PURE", "1")
    mod = importlib.reload(kernels)
    try:
        assert mod.BACKEND == "python"
        assert mod.tuples_with_sum_at_most is _kernels_py.tuples_with_sum_at_most
    finally:
        monkeypatch.delenv("FUJITA_LAB_PURE")
        importlib.reload(kernels)
