"""Strict JSON configuration: parsing, validation, grids, overrides."""

from __future__ import annotations

import json

import pytest

from btzdet.config import (
    ConfigError,
    GridSpec,
    OutputSpec,
    apply_overrides,
    load_config,
    materialize_grid,
    materialize_spectrum_grid,
    parse_config,
)

MINIMAL = {
    "scenario": {
        "branch1": {"M": 0.16, "l": 5.0, "R": 4.0},
        "omega": 0.00016,
        "tau_f": 10.0,
    }
}


def as_text(overrides=None, **top_level):
    doc = json.loads(json.dumps(MINIMAL))
    if overrides:
        for dotted, value in overrides.items():
            node = doc
            *parents, leaf = dotted.split(".")
            for key in parents:
                node = node.setdefault(key, {})
            node[leaf] = value
    doc.update(top_level)
    return json.dumps(doc)


class TestParseConfig:
    def test_minimal_defaults(self):
        cfg = parse_config(as_text())
        assert cfg.scenario.branch1.M == 0.16
        assert cfg.scenario.branch2 == cfg.scenario.branch1
        assert cfg.scenario.sigma == 1.0
        assert cfg.scenario.window == "proper"
        assert cfg.numerics.image_cutoff == 5
        assert cfg.branch == 1
        assert cfg.sweep is None and cfg.spectrum is None
        assert cfg.output == OutputSpec()

    def test_full_document(self):
        text = as_text(
            {
                "scenario.branch2": {"M": 0.16, "l": 5.0, "R": 8.0},
                "scenario.sigma": 1.0,
                "numerics.image_cutoff": 7,
                "numerics.convention": "2N",
                "output.path": "out.csv",
                "output.format": "csv",
                "output.figure": "out.png",
            },
            sweep={"kind": "position", "start": 1.05, "stop": 3.0, "count": 40},
            spectrum={"kind": "single", "start": -1.0, "stop": 1.0, "count": 21},
            branch=2,
        )
        cfg = parse_config(text)
        assert cfg.scenario.branch2.R == 8.0
        assert cfg.numerics.image_cutoff == 7
        assert cfg.numerics.image_count == 14
        assert cfg.sweep == GridSpec(kind="position", start=1.05, stop=3.0, count=40)
        assert cfg.spectrum.count == 21
        assert cfg.branch == 2
        assert cfg.output.figure == "out.png"

    def test_invalid_json(self):
        with pytest.raises(ConfigError, match="not valid JSON"):
            parse_config("{scenario:")

    def test_top_level_must_be_object(self):
        with pytest.raises(ConfigError, match="must be an object"):
            parse_config("[1, 2]")

    @pytest.mark.parametrize(
        "text, fragment",
        [
            (as_text(extra=1), "unknown keys in config: extra"),
            (as_text({"scenario.omgea": 1.0}), "unknown keys in scenario"),
            (as_text({"scenario.branch1.mass": 1.0}), "scenario.branch1"),
            (as_text({"numerics.cutoff": 3}), "unknown keys in numerics"),
        ],
    )
    def test_unknown_keys_are_hard_errors(self, text, fragment):
        with pytest.raises(ConfigError, match=fragment):
            parse_config(text)

    def test_missing_required_keys(self):
        with pytest.raises(ConfigError, match="missing required key scenario"):
            parse_config("{}")
        doc = json.loads(as_text())
        del doc["scenario"]["omega"]
        with pytest.raises(ConfigError, match="scenario.omega"):
            parse_config(json.dumps(doc))
        del doc["scenario"]["branch1"]
        with pytest.raises(ConfigError, match="scenario.branch1"):
            parse_config(json.dumps(doc))

    def test_bool_is_not_a_number(self):
        with pytest.raises(ConfigError, match="scenario.omega must be a number"):
            parse_config(as_text({"scenario.omega": True}))

    def test_fractional_integer_rejected(self):
        with pytest.raises(ConfigError, match="zeta must be an integer"):
            parse_config(as_text({"scenario.branch1.zeta": 0.5}))

    def test_physics_invariants_wrapped(self):
        # R inside the horizon is a parameter error, surfaced as ConfigError
        with pytest.raises(ConfigError, match="invalid parameters"):
            parse_config(as_text({"scenario.branch1.R": 1.0}))

    def test_branch_selector_validated(self):
        with pytest.raises(ConfigError, match="branch must be 1 or 2"):
            parse_config(as_text(branch=3))

    def test_output_format_validated(self):
        with pytest.raises(ConfigError, match="output.format"):
            parse_config(as_text({"output.format": "xml"}))

    def test_load_config_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="cannot read config"):
            load_config(tmp_path / "absent.json")

    def test_load_config_round_trip(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text(as_text(), encoding="utf-8")
        assert load_config(path) == parse_config(as_text())


class TestSweepSpec:
    def test_explicit_points(self):
        cfg = parse_config(as_text(sweep={"kind": "position", "points": [1.2, 2.0]}))
        assert cfg.sweep.points == (1.2, 2.0)
        assert cfg.sweep.start is None

    def test_bad_kind(self):
        with pytest.raises(ConfigError, match="sweep.kind"):
            parse_config(as_text(sweep={"kind": "radius", "points": [1.2]}))

    def test_kind_consistency(self):
        with pytest.raises(ConfigError, match="equal branch radii"):
            parse_config(
                as_text(
                    {"scenario.branch2": {"M": 0.16, "l": 5.0, "R": 8.0}},
                    sweep={"kind": "mass", "points": [1.5]},
                )
            )

    def test_points_validation(self):
        with pytest.raises(ConfigError, match="non-empty array"):
            parse_config(as_text(sweep={"kind": "position", "points": []}))
        with pytest.raises(ConfigError, match=r"points\[1\] must be a number"):
            parse_config(as_text(sweep={"kind": "position", "points": [1.2, True]}))

    def test_range_validation(self):
        with pytest.raises(ConfigError, match="count must be >= 1"):
            parse_config(
                as_text(sweep={"kind": "position", "start": 1.0, "stop": 2.0, "count": 0})
            )
        with pytest.raises(ConfigError, match="start must be <"):
            parse_config(
                as_text(sweep={"kind": "position", "start": 2.0, "stop": 1.0, "count": 3})
            )

    def test_degenerate_grid_fails_at_parse_time(self):
        with pytest.raises(ConfigError, match="coordinate 1 is excluded"):
            parse_config(as_text(sweep={"kind": "position", "points": [1.0]}))


class TestMaterializeGrid:
    def test_linspace_endpoints(self):
        grid = GridSpec(kind="position", start=1.05, stop=3.0, count=40)
        points = materialize_grid(grid)
        assert len(points) == 40
        assert points[0] == 1.05 and points[-1] == 3.0

    def test_coincidence_neighborhood_dropped(self):
        # ratio 1 sits midway between the two middle points, so both are
        # within one grid step of it and get dropped
        grid = GridSpec(kind="position", start=0.55, stop=1.45, count=4)
        assert materialize_grid(grid) == pytest.approx([0.55, 1.45])

    def test_grid_swallowed_by_exclusion(self):
        grid = GridSpec(kind="position", start=0.9999, stop=1.0001, count=2)
        with pytest.raises(ConfigError, match="empty after excluding"):
            materialize_grid(grid)

    def test_single_point(self):
        assert materialize_grid(GridSpec(kind="mass", start=1.5, stop=2.0, count=1)) == [
            1.5
        ]

    def test_explicit_points_positive(self):
        with pytest.raises(ConfigError, match="must be positive"):
            materialize_grid(GridSpec(kind="position", points=(-1.0,)))


class TestSpectrumGrid:
    def test_linspace_endpoints(self):
        cfg = parse_config(
            as_text(spectrum={"kind": "single", "start": -1.0, "stop": 1.0, "count": 5})
        )
        assert materialize_spectrum_grid(cfg.spectrum) == [-1.0, -0.5, 0.0, 0.5, 1.0]

    def test_single_sample(self):
        cfg = parse_config(
            as_text(spectrum={"kind": "single", "start": 0.3, "stop": 0.3, "count": 1})
        )
        assert materialize_spectrum_grid(cfg.spectrum) == [0.3]

    def test_kind_validated(self):
        with pytest.raises(ConfigError, match="spectrum.kind"):
            parse_config(
                as_text(spectrum={"kind": "dual", "start": 0.0, "stop": 1.0, "count": 2})
            )


class TestOverrides:
    def test_numerics_overrides(self):
        cfg = parse_config(as_text())
        out = apply_overrides(cfg, cutoff=8, convention="2N")
        assert out.numerics.image_cutoff == 8
        assert out.numerics.convention == "2N"
        assert out.scenario == cfg.scenario
        assert out.output == cfg.output

    def test_output_overrides(self):
        cfg = parse_config(as_text())
        out = apply_overrides(cfg, out="results.csv", figure="results.png")
        assert out.output.path == "results.csv"
        assert out.output.figure == "results.png"
        assert out.numerics == cfg.numerics

    def test_no_overrides_is_identity(self):
        cfg = parse_config(as_text())
        assert apply_overrides(cfg) == cfg
