"""
Unit tests for InputValidator

Tests 3-tier validation strategy:
1. Size and extension whitelist
2. Structured parse (JSON / YAML)
3. Schema check against the requested kind
"""

import pytest

from src.density import IndexSet
from src.dyadic import ONE
from src.errors import MalformedInputError
from src.input_validator import InputValidator, load_input
from src.schedule import Schedule
from src.seqspace import SparseVec


@pytest.fixture
def validator():
    """Create InputValidator instance"""
    return InputValidator()


class TestSizeAndExtension:
    """TIER 1: FAIL FAST before parsing"""

    def test_file_too_large(self, validator):
        """Files exceeding the size limit fail"""
        huge = b"x" * (17 * 1024 * 1024)

        with pytest.raises(MalformedInputError) as exc_info:
            validator.validate("huge.json", huge, "vector")

        error = str(exc_info.value)
        assert "too large" in error
        assert "16MB" in error

    def test_missing_extension(self, validator):
        """File without extension fails"""
        with pytest.raises(MalformedInputError) as exc_info:
            validator.validate("vector", b"{}", "vector")

        assert "<none>" in str(exc_info.value)

    def test_unsupported_extension(self, validator):
        """Unsupported extension lists the supported ones"""
        with pytest.raises(MalformedInputError) as exc_info:
            validator.validate("vector.txt", b"{}", "vector")

        error = str(exc_info.value)
        assert "Unsupported" in error
        assert ".txt" in error
        assert ".yaml" in error

    def test_unknown_kind(self, validator):
        """Only vector, schedule and indexset documents exist"""
        with pytest.raises(MalformedInputError):
            validator.validate("x.json", b"{}", "matrix")

    def test_non_utf8_fails(self, validator):
        """Binary data fails with the byte position"""
        with pytest.raises(MalformedInputError) as exc_info:
            validator.validate("garbage.json", b"\xff\xfe\x00\x00", "vector")

        assert "not valid UTF-8" in str(exc_info.value)


class TestStructuredParse:
    """TIER 2: JSON and YAML syntax"""

    def test_valid_json(self, validator):
        """JSON parses and converts"""
        content = b'{"entries": [[0, {"m": "1", "e": 0, "s": 1}]]}'

        result = validator.validate("e0.json", content, "vector")
        assert result.format_type == "json"
        assert result.parsed_data == {"entries": [[0, {"m": "1", "e": 0, "s": 1}]]}
        assert result.value == SparseVec.basis(0)

    def test_invalid_json_syntax(self, validator, fixtures_dir):
        """Truncated JSON reports line and column of the end of input"""
        content = (fixtures_dir / "bad_syntax.json").read_bytes()

        with pytest.raises(MalformedInputError) as exc_info:
            validator.validate("bad_syntax.json", content, "vector")

        error = str(exc_info.value)
        assert "Invalid JSON syntax" in error
        assert "Line 2, column 1" in error

    def test_valid_yaml(self, validator):
        """YAML with text coefficients"""
        content = b"entries:\n  - [3, \"-3/4\"]\n  - [7, \"1*2^-5\"]\n"

        result = validator.validate("v.yml", content, "vector")
        assert result.format_type == "yaml"
        assert result.value.render() == "-0.75*e_3 + 2^-5*e_7"

    def test_invalid_yaml_syntax(self, validator):
        """Unclosed flow sequence fails"""
        with pytest.raises(MalformedInputError) as exc_info:
            validator.validate("broken.yaml", b"entries: [\n  [0, 1],\n", "vector")

        assert "Invalid YAML syntax" in str(exc_info.value)


class TestSchemaCheck:
    """TIER 3: documents must match their kind"""

    def test_wrong_shape(self, validator):
        """A schedule is not a vector"""
        with pytest.raises(MalformedInputError) as exc_info:
            validator.validate("s.json", b'{"phi": [0, 0]}', "vector")

        assert "Invalid vector document" in str(exc_info.value)

    def test_duplicate_index(self, validator):
        """Each index appears once"""
        content = b'{"entries": [[2, "1"], [2, "1/2"]]}'

        with pytest.raises(MalformedInputError) as exc_info:
            validator.validate("v.json", content, "vector")

        assert "appears twice" in str(exc_info.value)

    def test_schedule_document(self, validator):
        """Schedule arrays become a Schedule"""
        content = b'{"phi": [0, 0], "delta": [0, 14], "tau": [4], "b": [0, 32, 96], "N": [1]}'

        result = validator.validate("s.json", content, "schedule")
        assert isinstance(result.value, Schedule)
        assert result.value.multipliers == (1,)


class TestLoadInput:
    """Reading fixture files from disk"""

    def test_vector_fixtures(self, fixtures_dir):
        """JSON and YAML vectors load to the same kind of object"""
        assert load_input(fixtures_dir / "e0.json", "vector") == SparseVec.basis(0)
        assert load_input(fixtures_dir / "e0_plus_e1.yaml", "vector").entries == {0: ONE, 1: ONE}

    def test_index_set_fixtures(self, fixtures_dir):
        """Index sets with and without progression structure"""
        fives = load_input(fixtures_dir / "multiples_of_5.json", "indexset")
        assert isinstance(fives, IndexSet)
        assert len(fives) == 200
        union = load_input(fixtures_dir / "progressions.json", "indexset")
        assert union.structure == ((0, 4), (0, 6))
        assert len(union) == 40

    def test_missing_file(self, tmp_path):
        """Unreadable paths are malformed input"""
        with pytest.raises(MalformedInputError) as exc_info:
            load_input(tmp_path / "absent.json", "vector")

        assert "Cannot read vector file" in str(exc_info.value)
