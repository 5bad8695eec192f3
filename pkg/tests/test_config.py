import pytest

from fieldmediation.config import load_config, qgem_amplitudes
from fieldmediation.errors import ConfigError
from fieldmediation.verification import fixture_path

MINIMAL = """
[field]
mass = 1
box_length = 50
mode_cutoff = 16

[object_a.right]
nodes = (0,0.5);(3,0.5)
[object_a.left]
nodes = (0,-0.5);(3,-0.5)
[object_b.right]
nodes = (0,10.5);(3,10.5)
[object_b.left]
nodes = (0,9.5);(3,9.5)
"""


def _write(tmp_path, text):
    p = tmp_path / "c.cfg"
    p.write_text(text)
    return p


def test_minimal_config_defaults(tmp_path):
    cfg = load_config(_write(tmp_path, MINIMAL))
    assert cfg.scenario.t_final == 3.0
    assert cfg.scenario.coupling_a == 0.5
    assert cfg.field.smear_width == 0.0
    assert cfg.quad_steps == 512
    assert cfg.qgem is None


def test_overrides(tmp_path):
    cfg = load_config(_write(tmp_path, MINIMAL), modes=4, box_length=80.0, quad_steps=64)
    assert (cfg.field.mode_cutoff, cfg.field.box_length, cfg.quad_steps) == (4, 80.0, 64)


def test_complex_amplitudes(tmp_path):
    text = MINIMAL + "[amplitudes]\nalpha_r = 0.6\nalpha_l = 0.8j\nbeta_r = 1\nbeta_l = 0\n"
    cfg = load_config(_write(tmp_path, text))
    assert cfg.scenario.alpha == (0.6, 0.8j)
    assert cfg.scenario.beta == (1, 0)


@pytest.mark.parametrize(
    "edit, needle",
    [
        (("mode_cutoff = 16", "mode_cutof = 16"), "mode_cutof"),
        (("mass = 1", "mass = heavy"), "mass"),
        (("[object_b.left]", "[object_c.left]"), "object_c.left"),
        (("nodes = (0,9.5);(3,9.5)", "nodes = (0,9.5);(3,9.5,1)"), "nodes"),
        (("nodes = (0,9.5);(3,9.5)", "nodes = (0,9.5);(3,14)"), "object_b.left"),
    ],
)
def test_malformed_inputs_name_the_key(tmp_path, edit, needle):
    with pytest.raises(ConfigError, match=needle.replace(".", r"\.")):
        load_config(_write(tmp_path, MINIMAL.replace(*edit)))


def test_unnormalised_amplitudes_rejected(tmp_path):
    text = MINIMAL + "[amplitudes]\nalpha_r = 1\nalpha_l = 1\n"
    with pytest.raises(ConfigError):
        load_config(_write(tmp_path, text))


def test_fixtures_load():
    for name in ("spacelike.cfg", "causal.cfg", "oracle_single.cfg", "oracle_two.cfg"):
        assert load_config(fixture_path(name)).scenario is not None
    q = load_config(fixture_path("qgem.cfg"))
    assert q.qgem is not None and q.qgem.newton_g == 1.0
    assert qgem_amplitudes(fixture_path("qgem.cfg"))[0] == pytest.approx((2**-0.5, 2**-0.5))
