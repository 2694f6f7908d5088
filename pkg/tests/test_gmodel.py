import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from filmplasmon import (
    ConstantG,
    DomainError,
    DrudeG,
    GValue,
    SingularityError,
    TableParseError,
    TableRangeError,
    TabulatedG,
    ZeroG,
    g_value,
    load_g_table,
)


def test_zero_model():
    model = ZeroG()
    assert model.tag == "zero"
    assert model.value(0.37, 1.2, 0.0) == 0j
    assert model.value(0.5 - 0.1j, 0.01, 0.3) == 0j


def test_constant_model():
    model = ConstantG(-1.0 / 3.0)
    assert model.tag == "constant"
    assert model.value(0.9 + 0.1j, 2.0, 0.05) == complex(-1.0 / 3.0)
    assert ConstantG(0.2 - 0.1j).value(0.5, 1.0) == 0.2 - 0.1j


def test_constant_model_rejects_nonfinite():
    with pytest.raises(DomainError):
        ConstantG(float("nan"))
    with pytest.raises(DomainError):
        ConstantG(complex(1.0, float("inf")))


def test_drude_values():
    model = DrudeG()
    assert model.tag == "drude"
    assert model.value(0.5, 1.0, 0.0) == pytest.approx(-1.0 / 3.0, rel=1e-14)
    assert model.value(0.1, 1.0, 0.0) == pytest.approx(-1.0 / 99.0, rel=1e-14)


def test_drude_pole_raises():
    with pytest.raises(SingularityError):
        DrudeG().value(1.0, 1.0, 0.0)


def test_drude_weak_penetration_below_cutoff():
    # |g| = Omega**2 / (1 - Omega**2) stays under 0.1 through Omega = 0.3
    model = DrudeG()
    for w in np.linspace(0.01, 0.3, 30):
        g = model.value(float(w), 1.0, 0.0)
        assert abs(g) < 0.1
        assert abs(g) == pytest.approx(w * w / (1.0 - w * w), rel=1e-12)


def test_drude_lossy_is_complex():
    g = DrudeG().value(0.5, 1.0, 0.1)
    assert g.imag != 0.0


def test_tabulated_interpolation():
    model = TabulatedG(omega_knots=(0.1, 0.3), g_knots=(0.0, 0.2))
    assert model.tag == "tabulated"
    assert model.value(0.2, 1.0, 0.0) == pytest.approx(0.1, rel=1e-14)


def test_tabulated_knots_are_exact():
    model = TabulatedG(omega_knots=(0.1, 0.3), g_knots=(0.0 + 0.0j, 0.2 - 0.05j))
    assert model.value(0.1, 1.0, 0.0) == 0.0 + 0.0j
    assert model.value(0.3, 1.0, 0.0) == 0.2 - 0.05j


def test_tabulated_no_extrapolation():
    model = TabulatedG(omega_knots=(0.1, 0.3), g_knots=(0.0, 0.2))
    with pytest.raises(TableRangeError):
        model.value(0.05, 1.0, 0.0)
    with pytest.raises(TableRangeError):
        model.value(0.300001, 1.0, 0.0)


def test_tabulated_uses_real_part_of_omega():
    model = TabulatedG(omega_knots=(0.1, 0.3), g_knots=(0.0, 0.2))
    assert model.value(0.2 - 0.04j, 1.0, 0.0) == model.value(0.2, 1.0, 0.0)


def test_tabulated_validation():
    with pytest.raises(DomainError, match="at least 2"):
        TabulatedG(omega_knots=(0.1,), g_knots=(0.0,))
    with pytest.raises(DomainError):
        TabulatedG(omega_knots=(0.3, 0.1), g_knots=(0.0, 0.2))
    with pytest.raises(DomainError):
        TabulatedG(omega_knots=(0.1, 0.1), g_knots=(0.0, 0.2))
    with pytest.raises(DomainError):
        TabulatedG(omega_knots=(0.1, 0.3), g_knots=(0.0,))
    with pytest.raises(DomainError):
        TabulatedG(omega_knots=(0.1, 0.3), g_knots=(0.0, float("inf")))


@given(
    knots=st.lists(
        st.floats(0.05, 5.0, allow_nan=False), min_size=2, max_size=8, unique=True
    ),
    data=st.data(),
)
@settings(max_examples=100)
def test_tabulated_reproduces_every_knot(knots, data):
    ws = tuple(sorted(knots))
    gs = tuple(
        complex(data.draw(st.floats(-1.0, 1.0)), data.draw(st.floats(-1.0, 1.0)))
        for _ in ws
    )
    model = TabulatedG(omega_knots=ws, g_knots=gs)
    for w, g in zip(ws, gs):
        assert model.value(w, 1.0, 0.0) == g


def test_g_value_wrapper():
    gv = g_value(DrudeG(), 0.5, 1.0, 0.0)
    assert isinstance(gv, GValue)
    assert gv.g == pytest.approx(-1.0 / 3.0)
    assert gv.model == "drude"


# ---------------------------------------------------------------------------
# CSV loading


def _write_table(tmp_path, text):
    path = tmp_path / "gtable.csv"
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_load_g_table(tmp_path):
    path = _write_table(tmp_path, "omega,g_re,g_im\n0.1,0.0,0.0\n0.3,0.2,-0.05\n")
    model = load_g_table(path)
    assert isinstance(model, TabulatedG)
    assert model.value(0.2, 1.0, 0.0) == pytest.approx(0.1 - 0.025j, rel=1e-14)


def test_load_g_table_header_is_case_insensitive(tmp_path):
    path = _write_table(tmp_path, "Omega,G_re,G_im\n0.1,0,0\n0.3,0.2,0\n")
    assert load_g_table(path).omega_knots == (0.1, 0.3)


def test_load_g_table_skips_blank_rows(tmp_path):
    path = _write_table(tmp_path, "omega,g_re,g_im\n\n0.1,0,0\n\n0.3,0.2,0\n\n")
    assert len(load_g_table(path).omega_knots) == 2


def test_load_g_table_too_short(tmp_path):
    path = _write_table(tmp_path, "omega,g_re,g_im\n0.1,0,0\n")
    with pytest.raises(TableParseError, match="table requires at least 2 points"):
        load_g_table(path)


def test_load_g_table_errors_name_the_line(tmp_path):
    path = _write_table(tmp_path, "omega,g_re,g_im\n0.1,0,0\n0.3,0.2\n")
    with pytest.raises(TableParseError, match="line 3"):
        load_g_table(path)
    path = _write_table(tmp_path, "omega,g_re,g_im\n0.1,0,0\nx,0.2,0\n")
    with pytest.raises(TableParseError, match="line 3"):
        load_g_table(path)


def test_load_g_table_requires_increasing_omega(tmp_path):
    path = _write_table(tmp_path, "omega,g_re,g_im\n0.3,0,0\n0.1,0.2,0\n")
    with pytest.raises(TableParseError, match="increasing"):
        load_g_table(path)


def test_load_g_table_rejects_bad_header(tmp_path):
    path = _write_table(tmp_path, "frequency,g_re,g_im\n0.1,0,0\n0.3,0.2,0\n")
    with pytest.raises(TableParseError, match="header"):
        load_g_table(path)


def test_load_g_table_missing_file(tmp_path):
    with pytest.raises(OSError):
        load_g_table(str(tmp_path / "missing.csv"))
