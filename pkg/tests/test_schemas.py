"""Scene schema: bundled files, scalar expressions, section consistency."""

import math

import pytest

from galsurf.marching import FactoredScale, GenericScale
from galsurf.scenes import SCENE_NAMES, scene_path
from galsurf.schemas import (ConfigError, SceneConfig, build_patch,
                             build_projection, load_scene, s_grid,
                             scene_from_dict)

from conftest import load_scene_dict


class TestBundledScenes:
    @pytest.mark.parametrize("name", SCENE_NAMES)
    def test_validate_against_the_schema(self, name):
        scene = load_scene(scene_path(name))
        assert isinstance(scene, SceneConfig)
        assert scene.marching.variant == name
        patch = build_patch(scene)
        assert isinstance(patch.scale, FactoredScale)
        assert build_projection(scene).drop_axis in "xyzw"

    def test_type_a_ranges_resolve_scalar_expressions(self):
        scene = load_scene(scene_path("typeA"))
        assert scene.curve.s_range == (0.0, 2 * math.pi)
        grid = s_grid(scene)
        assert len(grid) == 64
        assert grid[0] == 0.0 and grid[-1] == 2 * math.pi


class TestSceneValidation:
    def test_generic_variant_needs_coeffs(self):
        scene = load_scene_dict("typeA")
        scene["marching"] = {"variant": "generic"}
        with pytest.raises(ConfigError):
            scene_from_dict(scene)

    def test_factored_variant_needs_both_factor_sections(self):
        scene = load_scene_dict("typeA")
        del scene["marching"]["profile"]
        with pytest.raises(ConfigError):
            scene_from_dict(scene)

    def test_generic_build(self):
        scene = load_scene_dict("typeA")
        scene["marching"] = {"variant": "generic",
                             "coeffs": {"t": "0", "n": "0", "b": "u - 0.5",
                                        "e": "v - 0.5"}}
        scene["anchor"] = {"u0": 0.5, "v0": 0.5}
        patch = build_patch(scene_from_dict(scene))
        assert isinstance(patch.scale, GenericScale)

    def test_scalar_strings_anywhere(self):
        scene = load_scene_dict("typeB")
        scene["anchor"] = {"u0": "2 - 1", "v0": "0"}
        scene["projection"]["fixed_value"] = "1/8"
        parsed = scene_from_dict(scene)
        assert parsed.anchor.u0 == 1.0
        assert parsed.projection.fixed_value == 0.125

    def test_bad_scalar_expression(self):
        scene = load_scene_dict("typeA")
        scene["anchor"] = {"u0": "2*s", "v0": 0.5}
        with pytest.raises(ConfigError):
            scene_from_dict(scene)

    def test_bad_marching_expression_surfaces_at_build(self):
        scene = load_scene_dict("typeA")
        scene["marching"]["profile"]["b"] = "v*(u -"
        with pytest.raises(ConfigError):
            build_patch(scene_from_dict(scene))

    def test_variable_discipline_is_a_config_error(self):
        scene = load_scene_dict("typeA")
        scene["marching"]["arc"]["b"] = "u"  # typeA arcs may only use s
        with pytest.raises(ConfigError):
            build_patch(scene_from_dict(scene))

    def test_anchor_outside_box(self):
        scene = load_scene_dict("typeA")
        scene["anchor"] = {"u0": 3.0, "v0": 0.5}
        with pytest.raises(ConfigError):
            build_patch(scene_from_dict(scene))

    def test_missing_projection_section(self):
        scene = load_scene_dict("typeA")
        del scene["projection"]
        with pytest.raises(ConfigError):
            build_projection(scene_from_dict(scene))

    def test_tolerance_defaults(self):
        scene = scene_from_dict(load_scene_dict("typeC"))
        assert scene.tolerances.exact == 1e-9
        assert scene.tolerances.parallel == 1e-8

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_scene(tmp_path / "nope.json")
