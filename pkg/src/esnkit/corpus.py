"""The named verification corpus.

Small structures every suite runs against: semilattices, cyclic groups
viewed as reduced restriction semigroups, symmetric inverse monoids, the
full partial-map monoid on two points (a deliberate negative case), a
left-zero semigroup (another negative case), and the derived categories,
groupoids and expansions.  Builders are deterministic; the shipped JSON
fixtures are byte-for-byte re-emissions of these values.
"""
from __future__ import annotations

from dataclasses import dataclass

from .categories import FiniteCategory
from .core import Failure, MalformedInputError
from .esn import category_of
from .partial_maps import KIND_I, KIND_PT, build_monoid
from .semigroups import (
    FiniteSemigroup,
    RestrictionStructure,
    attach_inverse,
    check_inverse,
    derive_restriction,
)
from .szendrei import SzExpansion, build_sz


@dataclass(frozen=True)
class SemigroupFixture:
    """A raw corpus semigroup with its proposed distinguished semilattice."""

    name: str
    semigroup: FiniteSemigroup
    E: tuple[int, ...]


def _semilattice_chain(k: int, name: str) -> SemigroupFixture:
    table = tuple(tuple(min(i, j) for j in range(k)) for i in range(k))
    labels = tuple(f"e{i}" for i in range(k))
    return SemigroupFixture(name, FiniteSemigroup(k, table, labels), tuple(range(k)))


def _cyclic(k: int, name: str) -> SemigroupFixture:
    table = tuple(tuple((i + j) % k for j in range(k)) for i in range(k))
    labels = ("1",) + tuple("g" if i == 1 else f"g{i}" for i in range(1, k))
    return SemigroupFixture(name, FiniteSemigroup(k, table, labels), (0,))


def _left_zero(name: str) -> SemigroupFixture:
    table = ((0, 0), (1, 1))
    return SemigroupFixture(name, FiniteSemigroup(2, table, ("a", "b")), (0,))


def _monoid_fixture(kind: str, ground: int, name: str) -> SemigroupFixture:
    built = build_monoid(kind, ground)
    return SemigroupFixture(name, built.semigroup, built.identities)


_SEMIGROUP_BUILDERS = {
    "trivial": lambda: _cyclic(1, "trivial"),
    "sl2": lambda: _semilattice_chain(2, "sl2"),
    "chain3": lambda: _semilattice_chain(3, "chain3"),
    "z2": lambda: _cyclic(2, "z2"),
    "z3": lambda: _cyclic(3, "z3"),
    "i1": lambda: _monoid_fixture(KIND_I, 1, "i1"),
    "i2": lambda: _monoid_fixture(KIND_I, 2, "i2"),
    "i3": lambda: _monoid_fixture(KIND_I, 3, "i3"),
    "pt2": lambda: _monoid_fixture(KIND_PT, 2, "pt2"),
    "leftzero2": lambda: _left_zero("leftzero2"),
}

SEMIGROUP_NAMES = tuple(_SEMIGROUP_BUILDERS)

# members on which derive_restriction is expected to succeed
RESTRICTION_NAMES = ("trivial", "sl2", "chain3", "z2", "z3", "i1", "i2", "i3")

# members carrying an inverse certificate
INVERSE_NAMES = ("trivial", "sl2", "chain3", "z2", "z3", "i1", "i2", "i3")


def semigroup_fixture(name: str) -> SemigroupFixture:
    try:
        return _SEMIGROUP_BUILDERS[name]()
    except KeyError:
        raise MalformedInputError(f"unknown corpus semigroup {name!r}") from None


_RESTRICTION_CACHE: dict[str, RestrictionStructure] = {}


def restriction(name: str) -> RestrictionStructure:
    """The derived restriction structure of a corpus member, with an
    inverse certificate attached whenever one exists."""
    if name in _RESTRICTION_CACHE:
        return _RESTRICTION_CACHE[name]
    fx = semigroup_fixture(name)
    derived = derive_restriction(fx.semigroup, fx.E)
    if isinstance(derived, Failure):
        raise MalformedInputError(f"corpus member {name} is not a restriction semigroup: {derived}")
    if name in INVERSE_NAMES:
        cert = check_inverse(fx.semigroup)
        if isinstance(cert, Failure):
            raise MalformedInputError(f"corpus member {name} failed the inverse check: {cert}")
        derived = attach_inverse(derived, cert)
        if isinstance(derived, Failure):
            raise MalformedInputError(str(derived))
    _RESTRICTION_CACHE[name] = derived
    return derived


_CATEGORY_BUILDERS = {
    "trivial": lambda: category_of(restriction("trivial")),
    "z2": lambda: category_of(restriction("z2")),
    "c_sl2": lambda: category_of(restriction("sl2")),
    "c_i1": lambda: category_of(restriction("i1")),
    "c_i2": lambda: category_of(restriction("i2")),
    "c_i3": lambda: category_of(restriction("i3")),
    "c_chain3": lambda: category_of(restriction("chain3")),
    "c_z3": lambda: category_of(restriction("z3")),
    "sz_z2": lambda: expansion("z2").category,
    "sz_c_i2": lambda: expansion("c_i2").category,
}

CATEGORY_NAMES = tuple(_CATEGORY_BUILDERS)

_CATEGORY_CACHE: dict[str, FiniteCategory] = {}
_EXPANSION_CACHE: dict[str, SzExpansion] = {}


def partner_category_name(semigroup_name: str) -> str:
    """The corpus name of category_of(restriction(semigroup_name))."""
    if semigroup_name in ("z2", "trivial"):
        return semigroup_name
    return "c_" + semigroup_name


def category(name: str) -> FiniteCategory:
    if name in _CATEGORY_CACHE:
        return _CATEGORY_CACHE[name]
    try:
        built = _CATEGORY_BUILDERS[name]()
    except KeyError:
        raise MalformedInputError(f"unknown corpus category {name!r}") from None
    _CATEGORY_CACHE[name] = built
    return built


def expansion(base_name: str) -> SzExpansion:
    """The history expansion of a corpus groupoid ('z2' or 'c_i2')."""
    if base_name in _EXPANSION_CACHE:
        return _EXPANSION_CACHE[base_name]
    built = build_sz(category(base_name))
    _EXPANSION_CACHE[base_name] = built
    return built
