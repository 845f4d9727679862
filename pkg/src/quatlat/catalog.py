"""Named catalog of quaternion orders, loaded from bundled definition files.

Each entry carries trusted metadata (class-number-one flag, maximality,
named superorder, expected unit count).  `self_check` re-verifies the
metadata against recomputation.
"""

import os
import re

from .errors import ParseError
from .fields import FIELDS_BY_NAME
from .lattices import Lattice, canonicalize, is_order
from .perceptive import lattice_subset
from .quat import QuaternionAlgebra, parse_quaternion

_ORDER_DIR = os.path.join(os.path.dirname(__file__), "orders")


class CatalogEntry:
    __slots__ = ("name", "path", "class_number_1", "maximal", "superorder",
                 "expected_units", "_order")

    def __init__(self, name, path, class_number_1, maximal, superorder,
                 expected_units):
        self.name = name
        self.path = path
        self.class_number_1 = class_number_1
        self.maximal = maximal
        self.superorder = superorder
        self.expected_units = expected_units
        self._order = None

    @property
    def order(self):
        if self._order is None:
            self._order = load_order_file(self.path)
        return self._order


# name: (class_number_1, maximal, superorder, expected |units1|)
_METADATA = {
    "lipschitz": (False, False, "hurwitz", 8),
    "hurwitz": (True, True, None, 24),
    "g_q11": (False, False, "hurwitz", None),
    "g_pq": (False, False, "hurwitz", None),
    "g_p3": (False, False, "hurwitz", 2),
    "m31": (True, True, None, 12),
    "g31": (False, False, "m31", 4),
    "f31": (False, False, "m31", 2),
    "cubian": (True, True, None, None),
    "g_q3": (False, False, "cubian", 4),
    "g_q4": (False, False, "cubian", 2),
    "icosian": (True, True, None, 120),
    "hurwitz5": (True, False, "icosian", 24),
    "gotzky_g": (False, False, "icosian", None),
}

_ENTRIES = None


def load_order_file(path) -> Lattice:
    """Parse an order-definition file and return the O_K-span as a Lattice."""
    field = None
    algebra = None
    basis = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if ":" not in line:
                raise ParseError(f"{path}:{lineno}: expected 'key: value'")
            key, _, value = line.partition(":")
            key = key.strip()
            value = value.strip()
            if key == "field":
                if value not in FIELDS_BY_NAME:
                    raise ParseError(f"{path}:{lineno}: unknown field {value!r}")
                field = FIELDS_BY_NAME[value]
            elif key == "algebra":
                if field is None:
                    raise ParseError(f"{path}:{lineno}: field line must come first")
                m = re.fullmatch(r"a=(?P<a>\S+)\s+b=(?P<b>\S+)", value)
                if not m:
                    raise ParseError(f"{path}:{lineno}: expected 'a=<elem> b=<elem>'")
                from .fields import parse_field_element

                algebra = QuaternionAlgebra(
                    field,
                    parse_field_element(m.group("a"), field),
                    parse_field_element(m.group("b"), field),
                )
            elif key == "basis":
                if algebra is None:
                    raise ParseError(f"{path}:{lineno}: algebra line must come first")
                basis.append(parse_quaternion(value, algebra))
            else:
                raise ParseError(f"{path}:{lineno}: unknown key {key!r}")
    if algebra is None or len(basis) != 4:
        raise ParseError(f"{path}: need an algebra line and exactly four basis lines")
    L = canonicalize(basis, algebra)
    if not is_order(L):
        raise ParseError(f"{path}: basis does not span an order")
    return L


def catalog():
    """All catalog entries keyed by name."""
    global _ENTRIES
    if _ENTRIES is None:
        _ENTRIES = {
            name: CatalogEntry(
                name, os.path.join(_ORDER_DIR, f"{name}.order"), *meta
            )
            for name, meta in _METADATA.items()
        }
    return _ENTRIES

def get_order(name_or_path) -> Lattice:
    """Resolve a catalog name or an order-definition file path."""
    entries = catalog()
    if name_or_path in entries:
        return entries[name_or_path].order
    if os.path.exists(name_or_path):
        return load_order_file(name_or_path)
    raise ParseError(f"unknown order {name_or_path!r}")


def self_check(verify_units=True):
    """Re-verify catalog metadata; raises AssertionError on any mismatch."""
    from .enumeration import units1

    entries = catalog()
    for entry in entries.values():
        if entry.superorder is not None:
            above = entries[entry.superorder].order
            assert lattice_subset(entry.order, above), (
                f"{entry.name} is not inside {entry.superorder}"
            )
        if verify_units and entry.expected_units is not None:
            got = len(units1(entry.order))
            assert got == entry.expected_units, (
                f"{entry.name}: expected {entry.expected_units} units, got {got}"
            )
