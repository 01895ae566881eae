"""Tests for run file parsing, validation and planning."""

import json
import math

import pytest

from warpcurv.errors import ConfigError
from warpcurv.families import GeodesicSphere, Slice, TorusGraph
from warpcurv.runconfig import RunConfig, config_schema, load_config, parse_config, serialize_config

from .conftest import CONFIG_DIR

MINIMAL = """
checks = ["hk"]

[[families]]
kind = "slice"
s = 0.5
"""


def config_error(text: str) -> ConfigError:
    with pytest.raises(ConfigError) as info:
        parse_config(text)
    return info.value


class TestParsing:
    def test_minimal_defaults(self):
        cfg = parse_config(MINIMAL)
        assert cfg.ambient.n == 2
        assert cfg.ambient.fiber == "torus"
        assert cfg.ambient.periods == [2.0 * math.pi, 2.0 * math.pi]
        assert cfg.resolution == 64
        assert cfg.convergence_resolutions == [8, 16, 32, 64]
        assert cfg.tolerances.identity == 1e-8
        assert cfg.families[0].name == "slice-0"
        assert cfg.checks[0].id == "hk"
        assert cfg.output.format == "json"

    def test_json(self):
        cfg = parse_config(json.dumps({"checks": ["minkowski:1"], "families": [{"kind": "slice"}]}))
        assert cfg.checks[0].id == "minkowski:1"

    def test_convergence_resolutions_sorted(self):
        cfg = parse_config("convergence_resolutions = [32, 8, 16]\n" + MINIMAL)
        assert cfg.convergence_resolutions == [8, 16, 32]

    def test_build(self):
        cfg = parse_config(MINIMAL)
        assert cfg.build_families() == [("slice-0", Slice(0.5))]
        assert cfg.build_ambient().is_torus

    def test_round_trip(self):
        cfg = load_config(CONFIG_DIR / "demo.toml")
        assert parse_config(serialize_config(cfg)) == cfg

    def test_schema(self):
        schema = config_schema()
        assert {"ambient", "families", "checks", "tolerances"} <= set(schema["properties"])


class TestShippedConfigs:
    def test_demo_plan(self):
        cfg = load_config(CONFIG_DIR / "demo.toml")
        families = dict(cfg.build_families())
        assert isinstance(families["two-mode"], TorusGraph)
        plan = [(spec.id, family) for spec, family in cfg.plan()]
        assert len(cfg.checks) == 6
        assert len(plan) == 5 * 5 + 2
        assert ("lemma52", "slice-0.7") in plan
        assert ("lemma52", "two-mode") not in plan
        assert plan[-1] == ("alexandrov", "cos-0.05")
        assert plan[0] == ("hk", "slice-0")

    def test_spheres(self):
        cfg = load_config(CONFIG_DIR / "spheres.toml")
        assert cfg.ambient.fiber == "euclidean"
        assert cfg.ambient.periods is None
        assert all(isinstance(fam, GeodesicSphere) for _, fam in cfg.build_families())


class TestValidationErrors:
    def test_malformed_text(self):
        assert "malformed" in config_error("checks = [").message

    def test_unknown_key(self):
        err = config_error(MINIMAL + "\n[ambient]\nbogus = 1\n")
        assert "ambient.bogus" in err.paths

    def test_type_mismatch(self):
        err = config_error('resolution = "high"\n' + MINIMAL)
        assert "resolution" in err.paths

    def test_resolution_minimum(self):
        assert "resolution" in config_error("resolution = 4\n" + MINIMAL).paths

    def test_incompatible_fiber(self):
        err = config_error('checks = ["hk"]\n[[families]]\nkind = "geodesic_sphere"\nrho = 1.0\n')
        assert err.paths == ["families.0.kind", "ambient.fiber"]

    def test_periods_with_euclidean_fiber(self):
        err = config_error('checks = ["ambient-selftest"]\n[ambient]\nfiber = "euclidean"\nperiods = [1.0, 1.0]\n')
        assert "ambient.periods" in err.paths

    def test_unknown_check(self):
        assert config_error('checks = ["volume"]\n[[families]]\nkind = "slice"\n').paths == ["checks.0.id"]

    def test_unknown_family_in_check(self):
        text = '[[families]]\nkind = "slice"\n[[checks]]\nid = "hk"\nfamilies = ["nope"]\n'
        assert config_error(text).paths == ["checks.0.families"]

    def test_per_family_check_without_families(self):
        assert "checks.0.id" in config_error('checks = ["hk"]\n').paths

    def test_duplicate_names(self):
        text = 'checks = ["hk"]\n[[families]]\nkind = "slice"\nname = "a"\n[[families]]\nkind = "slice"\nname = "a"\n'
        assert config_error(text).paths == ["families.1.name"]

    def test_wave_length(self):
        text = 'checks = ["hk"]\n[[families]]\nkind = "torus_graph"\nmodes = [{ wave = [1, 0, 0], cos = 0.1 }]\n'
        assert config_error(text).paths == ["families.0.modes.0.wave"]

    @pytest.mark.parametrize(
        "text,suffix",
        [
            (MINIMAL + "\n[ambient]\npotential_scale = inf\n", "potential_scale"),
            (MINIMAL + "\n[ambient]\nperiods = [6.0, nan]\n", "periods.1"),
            ('checks = ["hk"]\n[[families]]\nkind = "slice"\ns = -inf\n', "s"),
            ('checks = ["hk"]\n[[families]]\nkind = "torus_graph"\nmodes = [{ wave = [1, 0], cos = nan }]\n', "cos"),
            ('checks = ["hk"]\n[ambient]\nfiber = "euclidean"\n[[families]]\nkind = "geodesic_sphere"\nrho = inf\n',
             "rho"),
            (MINIMAL + "\n[tolerances]\nidentity = inf\n", "tolerances.identity"),
        ],
    )
    def test_non_finite_numbers(self, text, suffix):
        err = config_error(text)
        assert any(path.endswith(suffix) for path in err.paths), err.paths

    def test_short_convergence_ladder(self):
        assert "convergence_resolutions" in config_error("convergence_resolutions = [8, 16]\n" + MINIMAL).paths

    def test_no_checks(self):
        assert "checks" in config_error("checks = []\n").paths

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError) as info:
            load_config(tmp_path / "missing.toml")
        assert info.value.paths == ["--config"]

    def test_selftest_needs_no_families(self):
        cfg = parse_config('checks = ["ambient-selftest"]\n')
        assert [(spec.id, family) for spec, family in cfg.plan()] == [("ambient-selftest", None)]
