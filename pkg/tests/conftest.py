import pytest

from resmap import kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    kernels.warm_up()


@pytest.fixture(scope="session")
def census_rows():
    from resmap.runs import run_census

    return run_census(100000, 25, residue_mod4=1)
