import pytest
from fractions import Fraction

from src.sampling import default_rng
from src.symfunc import Basis, BiSymPoly, SymPoly


@pytest.fixture
def rng():
    """
    Fixture providing a numpy Generator seeded from Config.RANDOM_SEED
    """
    return default_rng()


@pytest.fixture
def quartic_threshold():
    """
    Fixture providing m̃_4 + 2m̃_31 + 2m̃_22 + 5m̃_211 + 5m̃_1111,
    Lorentzian in n variables exactly when n <= 4
    """
    return SymPoly.from_values(4, Basis.MTILDE, [1, 2, 2, 5, 5])


@pytest.fixture
def m_concavity_gap_quartic():
    """
    Fixture providing a Lorentzian quartic whose ν_f is not M-concave
    """
    return SymPoly.from_values(
        4, Basis.MTILDE, [Fraction(1, 256), Fraction(1, 16), Fraction(3, 8), Fraction(1, 2), 1]
    )


@pytest.fixture
def hall_example():
    """
    Fixture providing the two-alphabet Lorentzian polynomial whose pairing
    with s_111(x) is (1/2) m_2(y)
    """
    half = Fraction(1, 2)
    return BiSymPoly({
        ((2, 1, 1), (1,)): half,
        ((1, 1, 1, 1), (1,)): 1,
        ((2, 1), (1, 1)): half,
        ((1, 1, 1), (2,)): half,
        ((1, 1, 1), (1, 1)): 1,
        ((1, 1), (2, 1)): half,
        ((1, 1), (1, 1, 1)): 1,
    })


@pytest.fixture
def sympoly_json(tmp_path):
    """
    Fixture writing a SymPoly document to a temporary file and returning its path
    """
    def write(f, name="f.json"):
        path = tmp_path / name
        path.write_text(f.to_json(), encoding="utf-8")
        return str(path)
    return write


@pytest.fixture
def mock_config(monkeypatch):
    """
    Fixture providing configuration with small desk-scale limits
    """
    monkeypatch.setattr("config.Config.REGION_STEPS", 10)
    monkeypatch.setattr("config.Config.BENCH_NVARS", (10, 100, 1000))
    monkeypatch.setattr("config.Config.SHOW_PROGRESS", False)

    from config import Config
    return Config
