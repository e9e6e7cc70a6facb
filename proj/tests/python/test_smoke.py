import cmath
import math

import numpy as np
import pytest

import hardy_spectra as hs


def test_exports():
    for name in hs.__all__:
        assert hasattr(hs, name)
    assert issubclass(hs.NotFredholmError, hs.NumericalError)
    assert issubclass(hs.ArgumentError, hs.HardyError)


def test_step_symbol():
    c1 = hs.fourier_coefficient("step:0", 1)
    assert abs(c1 - 1j / (2 * math.pi)) < 1e-12
    left, right = hs.one_sided_limits("step:0", 0.0)
    assert (left, right) == (1, 0)
    assert hs.winding_index("mono:3") == -3


def test_finite_sections():
    m = hs.evaluate("P[0+1i]", 4)
    assert m.shape == (4, 4)
    assert m.dtype == np.complex128
    assert abs(m[1, 1] - 4 / 9) < 1e-15
    sv = hs.singular_values(hs.evaluate("D[exp:0+1i]", 64))
    assert sv[0] <= 1 + 1e-8
    assert hs.identity_residual(1j, 128, 8) < 1e-6
    assert hs.identity_residual(1j, 128, 8, printed=True) > 0.2


def test_gelfand_and_spectra():
    value = hs.gelfand_evaluate("T[step:0]*P[0+1i]", s=0.25, z=2.0)
    assert abs(value - 0.25 * math.exp(-2.0)) < 1e-15
    assert hs.gelfand_evaluate("P[0+1i]") == 0
    with pytest.raises(hs.ConfigurationError):
        hs.gelfand_evaluate("C[eta-exp]", z=1.0)
    w = hs.cluster_set("eta-exp")[0]
    assert hs.gelfand_evaluate("C[eta-exp]", z=1.0, values={"eta-exp": w}) == pytest.approx(cmath.exp(1j * w))

    points = hs.spectrum_product("const:1", "const:0+1i")
    segment = [k / 1000 for k in range(1001)]
    assert hs.hausdorff_distance(points, segment) < 1e-3


def test_series_and_verdicts():
    assert hs.choose_alpha("const:0+1i") == 2.0
    r = hs.series_residuals("const:0+1i", terms=10, n=128, block=8)
    assert len(r) == 11
    assert r[-1] < r[0]
    with pytest.raises(hs.ConfigurationError):
        hs.series_residuals("const:0+1i", alpha=0.4, terms=2, n=64, block=8)
    assert hs.compactness_verdict("[T[mono:1], T[mono:-1]]", [32, 64]) == "compact"


def test_errors_map_to_exceptions():
    with pytest.raises(hs.ArgumentError):
        hs.evaluate("X[1]", 4)
    with pytest.raises(hs.ArgumentError):
        hs.identity_residual(1j, 64, 16)


def test_cli_round_trip(tmp_path):
    out = tmp_path / "c.csv"
    code, stdout, _ = hs.run_cli(["build-op", "--parabolic", "0+1i", "--dim", "3", "--out", str(out)])
    assert code == 0
    assert stdout.startswith("build-op:")
    assert "1,1,0.44444444444444442,0" in out.read_text()
    assert hs.run_cli(["nope"])[0] == 2
