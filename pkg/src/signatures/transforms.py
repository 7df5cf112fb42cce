"""
Value Transform Module.

Transforms map a normalized QID value to the token used in signatures
and relationship keys:

- identity      value unchanged
- yearOf        4-digit year of a yyyy-mm-dd date, absent otherwise
- streetName    value without leading house-number tokens
- prefix(k)     first k characters
- lastToken     last whitespace-delimited token
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache, partial
from typing import Callable, Dict, Optional, Tuple

from dateutil.parser import isoparse

from src.model.errors import RecordLinkageError

_ISO_DATE = re.compile(r"^(\d{4})-(\d{2})-(\d{2})$")
_HOUSE_NUMBER = re.compile(r"^\d+([a-z]|st|nd|rd|th)?$")
_PREFIX = re.compile(r"^prefix\(([1-9]\d*)\)$")


class SignatureError(RecordLinkageError):
    """Raised for invalid transforms, features, graph lookups or probability inputs."""

    pass


def _identity(value: str) -> Optional[str]:
    return value


def _year_of(value: str) -> Optional[str]:
    match = _ISO_DATE.match(value)
    if match is None:
        return None
    try:
        isoparse(value)
    except ValueError:
        return None
    return match.group(1)


def _street_name(value: str) -> Optional[str]:
    tokens = value.split(" ")
    while tokens and _HOUSE_NUMBER.match(tokens[0]):
        tokens.pop(0)
    return " ".join(tokens) or None


def _prefix(value: str, length: int) -> Optional[str]:
    return value[:length]


def _last_token(value: str) -> Optional[str]:
    return value.split(" ")[-1] or None


_NAMED: Dict[str, Callable[[str], Optional[str]]] = {
    "identity": _identity,
    "yearOf": _year_of,
    "streetName": _street_name,
    "lastToken": _last_token,
}


@dataclass(frozen=True)
class TransformFn:
    """A named value transform; call it on a normalized, non-absent value."""

    id: str
    func: Callable[[str], Optional[str]]

    def __call__(self, value: str) -> Optional[str]:
        return self.func(value)


@lru_cache(maxsize=None)
def get_transform(transform_id: str) -> TransformFn:
    """
    Resolve a transform id to its function.

    Raises:
        SignatureError: If the id is not one of the supported transforms.
    """
    if transform_id in _NAMED:
        return TransformFn(transform_id, _NAMED[transform_id])

    match = _PREFIX.match(transform_id)
    if match is not None:
        length = int(match.group(1))
        return TransformFn(transform_id, partial(_prefix, length=length))

    raise SignatureError(
        f"Unknown transform '{transform_id}' "
        f"(expected one of {sorted(_NAMED)} or prefix(k) with k >= 1)"
    )


def apply_transform(fn: TransformFn | str, value: Optional[str]) -> Optional[str]:
    """Apply a transform (object or id); absent input and empty output are absent."""
    if value is None:
        return None
    transform = get_transform(fn) if isinstance(fn, str) else fn
    result = transform(value)
    return result or None


def parse_member(text: str) -> Tuple[str, str]:
    """
    Split ``transform:attribute`` into (attribute, transform id).

    A bare attribute name means identity, e.g. ``prefix(9):StreetAddress``
    -> ("StreetAddress", "prefix(9)") and ``PhoneNumber`` -> ("PhoneNumber", "identity").
    """
    text = text.strip()
    if ":" in text:
        transform_id, attribute = text.split(":", 1)
        transform_id, attribute = transform_id.strip(), attribute.strip()
        get_transform(transform_id)
    else:
        transform_id, attribute = "identity", text
    if not attribute:
        raise SignatureError(f"Member '{text}' names no attribute")
    return attribute, transform_id
