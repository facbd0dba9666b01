import pytest

from symval import analytic, qseries


@pytest.fixture(scope="session")
def delta_2000():
    f = qseries.delta_newform(2000)
    qseries.hecke_validate(f)
    return f


@pytest.fixture(scope="session")
def zeta():
    return analytic.zeta_spec()


_SPEC_CACHE = {}


@pytest.fixture(scope="session")
def sym_spec():
    """Resolved Sym^n delta specs, shared across test modules."""

    def get(n, precision=160):
        if n not in _SPEC_CACHE:
            spec = analytic.spec_for_symn("delta", n)
            analytic.resolve_root_number(spec, precision=precision)
            _SPEC_CACHE[n] = spec
        return _SPEC_CACHE[n]

    return get
