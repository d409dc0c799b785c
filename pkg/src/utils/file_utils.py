"""
File utilities for ideal files and bundled example fixtures.
Reads and writes the JSON ideal format used by the CLI.
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Union

from algebra.graded_ideal import GradedIdeal
from algebra.graded_ring import VARIABLES, Form
from algebra.linalg_gf import FieldPrime
from errors import IdealInputError

FIXTURES_DIR = Path(__file__).parent.parent / "fixtures"


def _integer(value: Any, field_name: str) -> int:
    try:
        return int(value)
    except (TypeError, ValueError) as e:
        raise IdealInputError(f"'{field_name}' must be an integer, got {value!r}") from e


def _parse_form(terms: Any, field: FieldPrime, position: int) -> Form:
    if not isinstance(terms, list):
        raise IdealInputError(f"Generator {position} must be a list of terms")
    pairs = []
    for term in terms:
        if not isinstance(term, Mapping) or "c" not in term or "e" not in term:
            raise IdealInputError(f"Generator {position}: each term needs 'c' and 'e', got {term!r}")
        try:
            pairs.append((int(term["c"]), [int(a) for a in term["e"]]))
        except (TypeError, ValueError) as e:
            raise IdealInputError(f"Generator {position}: bad term {term!r} ({e})") from e
    return Form.from_terms(pairs, field)


def parse_ideal(
    data: Mapping[str, Any],
    prime: Optional[int] = None,
    truncation_cap: int = 40,
) -> GradedIdeal:
    """Build an ideal from a decoded JSON ideal document.

    Args:
        data: {"prime": p, "vars": [...], "truncation": D, "generators": [[{"c", "e"}, ...], ...]}
        prime: Overrides the document's prime when given
        truncation_cap: Largest degree tried when no truncation is given

    Raises:
        IdealInputError: On any malformed field or a non q-primary ideal
    """
    if not isinstance(data, Mapping):
        raise IdealInputError("An ideal file must hold a JSON object")
    modulus = prime if prime is not None else data.get("prime")
    if modulus is None:
        raise IdealInputError("No prime given in the file or on the command line")
    field = FieldPrime(_integer(modulus, "prime"))

    variables = data.get("vars", list(VARIABLES))
    if list(variables) != list(VARIABLES):
        raise IdealInputError(f"Only the variables {', '.join(VARIABLES)} are supported, got {variables}")

    generators = data.get("generators")
    if not isinstance(generators, list) or not generators:
        raise IdealInputError("'generators' must be a nonempty list")
    forms = [_parse_form(terms, field, k) for k, terms in enumerate(generators)]

    truncation = data.get("truncation")
    return GradedIdeal.from_generators(
        forms,
        field,
        truncation=None if truncation is None else _integer(truncation, "truncation"),
        truncation_cap=truncation_cap,
    )


def load_ideal(path: Union[str, Path], prime: Optional[int] = None, truncation_cap: int = 40) -> GradedIdeal:
    """Load an ideal from a JSON file."""
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as e:
        raise IdealInputError(f"Ideal file not found: {path}") from e
    except json.JSONDecodeError as e:
        raise IdealInputError(f"Cannot parse {path}: {e}") from e
    return parse_ideal(data, prime, truncation_cap)


def ideal_to_json(ideal: GradedIdeal, name: Optional[str] = None) -> Dict[str, Any]:
    """Minimal generators and truncation of an ideal in the JSON ideal format."""
    document: Dict[str, Any] = {}
    if name:
        document["name"] = name
    document.update(
        {
            "prime": ideal.field.p,
            "vars": list(VARIABLES),
            "truncation": ideal.truncation,
            "generators": [
                [{"c": c, "e": list(e)} for c, e in form.terms()]
                for form in ideal.minimal_generators()
            ],
        }
    )
    return document


def list_fixtures() -> List[str]:
    """Names of the bundled example ideals."""
    return sorted(path.stem for path in FIXTURES_DIR.glob("*.json"))


def load_fixture(name: str, prime: Optional[int] = None) -> GradedIdeal:
    """Load a bundled example ideal by name (see list_fixtures)."""
    fixture_file = FIXTURES_DIR / f"{name}.json"
    if not fixture_file.exists():
        raise IdealInputError(f"Unknown fixture {name!r}; available: {', '.join(list_fixtures())}")
    return load_ideal(fixture_file, prime)


def write_text(path: Union[str, Path], content: str) -> Path:
    """Write text output, creating parent directories as needed."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(content, encoding="utf-8")
    return path


def write_ideal(path: Union[str, Path], ideal: GradedIdeal, name: Optional[str] = None) -> Path:
    """Write an ideal as JSON, creating parent directories as needed."""
    return write_text(path, json.dumps(ideal_to_json(ideal, name), indent=2) + "\n")
