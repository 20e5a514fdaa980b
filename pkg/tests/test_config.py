import pytest

from thetabounds.config import ConfigError, RunConfig, load_config


def test_defaults():
    cfg = RunConfig()
    assert cfg.bump_radius == 1.0 and cfg.enum_cap == 10 ** 8 and cfg.band_t == (5.0, 10.0, 20.0, 50.0)


def test_load_text():
    cfg = load_config(text="quad_rtol = 1e-7\nseed = 4  # comment\nband_t = 20, 50\nformat = csv\n")
    assert cfg.quad_rtol == 1e-7 and cfg.seed == 4 and cfg.band_t == (20.0, 50.0) and cfg.format == "csv"


@pytest.mark.parametrize("text", ["enum_cap = 100", "quad_rtol = -1", "bump_radius = 2", "band_t =", "bogus = 1",
                                  "format = xml", "seed = abc"])
def test_invalid(text):
    with pytest.raises(ConfigError):
        load_config(text=text)


def test_roundtrip(tmp_path):
    from thetabounds.acceptance import config_text

    cfg = RunConfig(seed=7, ball_t=(25.0,), random_trials=50)
    p = tmp_path / "run.cfg"
    p.write_text(config_text(cfg))
    assert load_config(str(p)) == cfg
