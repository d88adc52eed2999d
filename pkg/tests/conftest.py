import pytest

from kantorlab.exact_linalg import QQ, Field
from kantorlab import e6, skew
from kantorlab.bc2 import reflection_direct
from kantorlab.kantor import kantor_construct
from kantorlab.pairs import direct_sum, jordan_1d


@pytest.fixture(scope="session")
def fs4():
    return skew.FormSpace.standard(QQ, 4)


@pytest.fixture(scope="session")
def sp_fskew4(fs4):
    return skew.sp_fskew(fs4)


@pytest.fixture(scope="session")
def fskew4_reflected(sp_fskew4):
    return reflection_direct(sp_fskew4)


@pytest.fixture(scope="session")
def e_tilde():
    return e6.build_e_tilde(QQ)


@pytest.fixture(scope="session")
def e6_alg(e_tilde):
    return e6.build_e(QQ, tilde=e_tilde)


@pytest.fixture(scope="session")
def roots(e6_alg):
    return e6.root_decomposition(e6_alg)


@pytest.fixture(scope="session")
def e6_bc2(e6_alg):
    return e6.bc2_on_e(e6_alg)


@pytest.fixture(scope="session")
def lambda3():
    return e6.lambda3_pair(QQ, labelled=True)


@pytest.fixture(scope="session")
def lambda3_reflected(lambda3):
    return reflection_direct(lambda3)


@pytest.fixture(scope="session")
def k_lambda3(lambda3):
    return kantor_construct(lambda3.without_labels())


@pytest.fixture(scope="session")
def two_jordan():
    return direct_sum(jordan_1d(QQ), jordan_1d(QQ))


@pytest.fixture(params=[0, 5, 7], ids=["Q", "GF5", "GF7"])
def field(request):
    return Field(request.param)
