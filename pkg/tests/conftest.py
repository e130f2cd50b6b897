import pytest

from qflag.cartan import FlagSpec, LieType
from qflag.peterweyl import PWAlgebra


@pytest.fixture(scope="session")
def algebras():
    """Shared PWAlgebra instances per Lie type (module caches are reused)."""
    cache = {}

    def get(name):
        lie = LieType.parse(name) if isinstance(name, str) else name
        if lie not in cache:
            cache[lie] = PWAlgebra(lie)
        return cache[lie]

    return get


@pytest.fixture(scope="session")
def flag_of():
    return FlagSpec.parse
