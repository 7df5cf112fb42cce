"""
Tests for the Configuration Module.

Covers:
- Config: defaults, validation, overrides and the file-style mapping.
- ConfigLoader: .cfg/.yaml/.json loading, coercion, caching and errors.
- SchemaRegistry: schema loading and validation messages.
- parse_relationship_sets: the ``a+b|c`` notation.
"""

from __future__ import annotations

import json
from pathlib import Path

import pytest
import yaml

from src.config.loader import ConfigLoader, parse_config
from src.config.schema_registry import SchemaRegistry, SchemaValidationError
from src.config.settings import Config, ConfigurationError, parse_relationship_sets


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------


@pytest.fixture
def cfg_text() -> str:
    """A line-oriented config using an implicit section and [transforms]."""
    return (
        "# comment line\n"
        "n_a = 3\n"
        "seed = 7\n"
        "\n"
        "[matching]\n"
        "s_t = 0.6   # inline comment\n"
        "attribute_only = yes\n"
        "similarity = dice\n"
        "\n"
        "[signatures]\n"
        "relationships = last_name + street_address | PhoneNumber\n"
        "features = neighbour_signatures, degree\n"
        "\n"
        "[selection]\n"
        "qids = FirstName, LastName, BirthDate\n"
        "\n"
        "[transforms]\n"
        "BirthDate = identity, yearOf\n"
    )


# ---------------------------------------------------------------------------
# Config Tests
# ---------------------------------------------------------------------------


class TestConfig:
    """Tests for the Config dataclass."""

    def test_defaults(self) -> None:
        """Test the documented defaults."""
        config = Config()
        assert (config.n_a, config.alpha, config.c_t, config.p_t) == (5, 0.5, 0.7, 0.7)
        assert (config.beta, config.s_t, config.lam, config.mu) == (0.5, 0.8, 1.2, 0.2)
        assert config.features == ("neighbour_signatures",)
        assert config.selection_method == "apriori"
        assert not config.attribute_only

    def test_out_of_range_names_constraint(self) -> None:
        """Test that a range violation names the key and the constraint."""
        with pytest.raises(ConfigurationError, match=r"mu.*0 < mu < 1 < lambda"):
            Config(mu=1.5)

    def test_lambda_must_exceed_one(self) -> None:
        """Test the strict lower bound on lambda."""
        with pytest.raises(ConfigurationError, match="lambda"):
            Config(lam=1.0)

    def test_unknown_feature_rejected(self) -> None:
        """Test that feature ids are checked against the known set."""
        with pytest.raises(ConfigurationError, match="features"):
            Config(features=("pagerank",))

    def test_bad_transform_rejected(self) -> None:
        """Test that transform ids are checked."""
        with pytest.raises(ConfigurationError, match="transforms"):
            Config(transforms={"BirthDate": ("soundex",)})

    def test_with_overrides_skips_none(self) -> None:
        """Test that None overrides keep the current value."""
        config = Config(s_t=0.6).with_overrides(s_t=None, beta=0.3, lam=1.5)
        assert config.s_t == 0.6
        assert config.beta == 0.3
        assert config.lam == 1.5

    def test_with_overrides_revalidates(self) -> None:
        """Test that an override is validated like a file value."""
        with pytest.raises(ConfigurationError, match="s_t"):
            Config().with_overrides(s_t=1.2)

    def test_with_overrides_unknown_key(self) -> None:
        """Test that an unknown override is an error."""
        with pytest.raises(ConfigurationError, match="Unknown configuration keys"):
            Config().with_overrides(threshold=0.5)

    def test_transforms_for_defaults_to_identity(self) -> None:
        """Test the identity fallback for unlisted attributes."""
        config = Config(transforms={"BirthDate": ["identity", "yearOf"]})
        assert config.transforms_for("BirthDate") == ("identity", "yearOf")
        assert config.transforms_for("City") == ("identity",)

    def test_to_dict_uses_file_keys(self) -> None:
        """Test that to_dict writes lambda and plain lists."""
        data = Config(relationships=[["a", "b"]]).to_dict()
        assert data["lambda"] == 1.2
        assert "lam" not in data
        assert data["relationships"] == [["a", "b"]]
        assert Config.from_mapping(data) == Config(relationships=[["a", "b"]])


class TestParseRelationshipSets:
    """Tests for the relationship notation."""

    def test_sets_and_members(self) -> None:
        """Test that | separates sets and + joins members."""
        assert parse_relationship_sets("last_name + street_address | phone") == (
            ("last_name", "street_address"),
            ("phone",),
        )

    def test_transformed_member(self) -> None:
        """Test that transform prefixes survive parsing."""
        assert parse_relationship_sets("prefix(9):StreetAddress") == (
            ("prefix(9):StreetAddress",),
        )

    def test_list_input(self) -> None:
        """Test that a list of lists passes through."""
        assert parse_relationship_sets([["a", "b"], ["c"]]) == (("a", "b"), ("c",))


# ---------------------------------------------------------------------------
# ConfigLoader Tests
# ---------------------------------------------------------------------------


class TestConfigLoader:
    """Tests for the ConfigLoader class."""

    def test_load_cfg_file(self, tmp_path: Path, cfg_text: str) -> None:
        """Test loading and coercing a line-oriented config."""
        path = tmp_path / "linkage.cfg"
        path.write_text(cfg_text, encoding="utf-8")

        config = ConfigLoader().load(path)

        assert config.n_a == 3
        assert config.seed == 7
        assert config.s_t == 0.6
        assert config.attribute_only is True
        assert config.similarity == "dice"
        assert config.relationships == (("last_name", "street_address"), ("PhoneNumber",))
        assert config.features == ("neighbour_signatures", "degree")
        assert config.qids == ("FirstName", "LastName", "BirthDate")
        assert config.transforms_for("BirthDate") == ("identity", "yearOf")

    def test_load_yaml_file(self, tmp_path: Path) -> None:
        """Test loading a sectioned YAML config."""
        path = tmp_path / "linkage.yaml"
        path.write_text(
            yaml.dump(
                {
                    "selection": {"n_a": 4, "qids": ["a", "b"]},
                    "matching": {"s_t": 0.9, "beta": 0.25},
                    "signatures": {"lambda": 1.5, "relationships": [["a", "b"], ["c"]]},
                    "transforms": {"b": ["yearOf"]},
                }
            ),
            encoding="utf-8",
        )

        config = ConfigLoader().load(path)

        assert config.n_a == 4
        assert config.lam == 1.5
        assert config.beta == 0.25
        assert config.relationships == (("a", "b"), ("c",))
        assert config.transforms_for("b") == ("yearOf",)

    def test_load_json_file(self, tmp_path: Path) -> None:
        """Test loading a flat JSON config."""
        path = tmp_path / "linkage.json"
        path.write_text(json.dumps({"n_a": 2, "one_to_one": True}), encoding="utf-8")
        config = ConfigLoader().load(path)
        assert config.n_a == 2
        assert config.one_to_one

    def test_empty_file_gives_defaults(self, tmp_path: Path) -> None:
        """Test that an empty config file yields the default Config."""
        path = tmp_path / "empty.cfg"
        path.write_text("", encoding="utf-8")
        assert parse_config(path) == Config()

    def test_load_file_not_found(self, tmp_path: Path) -> None:
        """Test that FileNotFoundError is raised for missing files."""
        with pytest.raises(FileNotFoundError, match="Configuration file not found"):
            ConfigLoader().load(tmp_path / "missing.cfg")

    def test_load_unsupported_format(self, tmp_path: Path) -> None:
        """Test that ConfigurationError is raised for unsupported formats."""
        path = tmp_path / "config.txt"
        path.write_text("n_a = 3", encoding="utf-8")
        with pytest.raises(ConfigurationError, match="Unsupported file format"):
            ConfigLoader().load(path)

    def test_load_invalid_yaml(self, tmp_path: Path) -> None:
        """Test that ConfigurationError is raised for malformed YAML."""
        path = tmp_path / "bad.yaml"
        path.write_text("key: [invalid yaml{", encoding="utf-8")
        with pytest.raises(ConfigurationError, match="Failed to parse"):
            ConfigLoader().load(path)

    def test_unknown_key_rejected(self, tmp_path: Path) -> None:
        """Test that keys outside the schema are reported."""
        path = tmp_path / "typo.cfg"
        path.write_text("s_threshold = 0.5\n", encoding="utf-8")
        with pytest.raises(ConfigurationError, match="s_threshold"):
            ConfigLoader().load(path)

    def test_bad_number_names_key(self, tmp_path: Path) -> None:
        """Test that an unparsable number names the key and its constraint."""
        path = tmp_path / "bad.cfg"
        path.write_text("alpha = lots\n", encoding="utf-8")
        with pytest.raises(ConfigurationError, match=r"alpha.*0 <= alpha <= 1"):
            ConfigLoader().load(path)

    def test_out_of_range_value(self, tmp_path: Path) -> None:
        """Test that a range violation in a file names the file and the key."""
        path = tmp_path / "range.cfg"
        path.write_text("c_t = 1.5\n", encoding="utf-8")
        with pytest.raises(ConfigurationError, match="range.cfg") as info:
            ConfigLoader().load(path)
        assert "[c_t]" in str(info.value)

    def test_key_in_two_sections(self, tmp_path: Path) -> None:
        """Test that a key may only be set once across sections."""
        path = tmp_path / "twice.cfg"
        path.write_text("s_t = 0.5\n[matching]\ns_t = 0.6\n", encoding="utf-8")
        with pytest.raises(ConfigurationError, match="set in both"):
            ConfigLoader().load(path)

    def test_load_with_caching(self, tmp_path: Path, cfg_text: str) -> None:
        """Test that config loading uses the cache on the second call."""
        path = tmp_path / "linkage.cfg"
        path.write_text(cfg_text, encoding="utf-8")

        loader = ConfigLoader()
        first = loader.load(path)
        assert loader.load(path) is first
        loader.clear_cache()
        assert loader.load(path) is not first

    def test_bundled_examples_load(self) -> None:
        """Test that the example configs shipped in config/ are valid."""
        root = Path(__file__).resolve().parents[1] / "config"
        for name in ("linkage.example.cfg", "linkage.example.yaml", "synthetic.example.cfg"):
            parse_config(root / name)


# ---------------------------------------------------------------------------
# SchemaRegistry Tests
# ---------------------------------------------------------------------------


class TestSchemaRegistry:
    """Tests for the SchemaRegistry class."""

    def test_bundled_schema_listed(self) -> None:
        """Test that the linkage schema ships with the package."""
        assert "linkage_config_schema" in SchemaRegistry().list_schemas()

    def test_validate_collects_every_error(self) -> None:
        """Test that each violation is reported with its description."""
        with pytest.raises(SchemaValidationError) as info:
            SchemaRegistry().validate({"n_a": 0, "beta": 2}, "linkage_config_schema")
        errors = info.value.errors
        assert len(errors) == 2
        assert any("[beta]" in e and "0 <= beta <= 1" in e for e in errors)
        assert any("[n_a]" in e and "n_a >= 1" in e for e in errors)

    def test_missing_schema(self, tmp_path: Path) -> None:
        """Test that an unknown schema name raises FileNotFoundError."""
        with pytest.raises(FileNotFoundError, match="Schema not found"):
            SchemaRegistry(tmp_path).get_schema("nope")

    def test_custom_schema_dir(self, tmp_path: Path) -> None:
        """Test validation against a schema from another directory."""
        (tmp_path / "tiny.json").write_text(
            json.dumps({"type": "object", "required": ["x"]}), encoding="utf-8"
        )
        registry = SchemaRegistry(tmp_path)
        registry.validate({"x": 1}, "tiny")
        with pytest.raises(SchemaValidationError, match="'x' is a required property"):
            registry.validate({}, "tiny")
