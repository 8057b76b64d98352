import pytest

from pblocks.library import library_group


@pytest.fixture(scope="session")
def grp():
    """Session-cached library groups; tables etc. are cached on the objects."""
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = library_group(name)
        return cache[name]

    return get
