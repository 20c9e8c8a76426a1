"""Representation specs: domain types, the built-in catalog, spec-file
ingestion/validation, and local-equivalence testing.

A spec records the invariants of a cuspidal representation needed by the
rest of the toolkit: the group degree m, the field degree l, the arithmetic
conductor, the archimedean parameters, and finite-place Satake data.  Finite
data is either an explicit table keyed by prime-power place norm or one of
the built-in generator rules over the rationals (l = 1):

* ``trivial`` - the trivial character (all Satake values 1),
* ``dirichlet-quadratic:<modulus>`` - real quadratic character, Satake value
  the Legendre symbol (ramified place encoded as a zero),
* ``delta`` - the weight-12 level-1 cusp form with arithmetically
  normalized Satake values.

Ramified places are encoded as multisets that may contain zeros.  All values
are immutable after construction, so specs are safe to share across workers;
the only mutable state is the tau table cache, which is lock-guarded.
"""

from __future__ import annotations

import cmath
import json
import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .arith import legendre_symbol, prime_power_decomposition, sieve_primes
from .errors import (
    MissingLocalDataError,
    SpecValidationError,
    UnresolvedPairConductorError,
)
from .tau import ramanujan_tau

DEFAULT_EQUIVALENCE_TOL = 1e-9

_QUADRATIC_RE = re.compile(r"^dirichlet-quadratic:(\d+)$")


@dataclass(frozen=True)
class PlaceNorm:
    """A finite place identified by its norm, a prime power p**e."""

    value: int
    prime: int
    exponent: int

    @classmethod
    def from_value(cls, n: int) -> "PlaceNorm":
        if not isinstance(n, int) or isinstance(n, bool):
            raise SpecValidationError(f"place norm must be an integer, got {n!r}")
        dec = prime_power_decomposition(n)
        if dec is None:
            raise SpecValidationError(f"place norm must be a prime power, got {n}")
        return cls(value=n, prime=dec[0], exponent=dec[1])

    def __str__(self) -> str:
        return str(self.value)


def _as_place(v: "PlaceNorm | int") -> PlaceNorm:
    return v if isinstance(v, PlaceNorm) else PlaceNorm.from_value(v)


def _canonical(values: Iterable[complex]) -> tuple[complex, ...]:
    """Deterministic multiset order: lexicographic on (real, imag)."""
    return tuple(sorted((complex(z) for z in values), key=lambda z: (z.real, z.imag)))


class _LocalData:
    """Satake data per finite place; table-backed or generated by rule."""

    builtin: str | None = None

    def has(self, v: PlaceNorm) -> bool:
        raise NotImplementedError

    def satake(self, v: PlaceNorm) -> tuple[complex, ...]:
        raise NotImplementedError

    def norms_up_to(self, limit: int) -> list[int]:
        raise NotImplementedError


class _TableData(_LocalData):
    def __init__(self, table: dict[int, tuple[complex, ...]]):
        self.table = dict(table)

    def has(self, v: PlaceNorm) -> bool:
        return v.value in self.table

    def satake(self, v: PlaceNorm) -> tuple[complex, ...]:
        try:
            return self.table[v.value]
        except KeyError:
            raise MissingLocalDataError(
                f"no Satake data at place norm {v.value}", norm=v.value
            ) from None

    def norms_up_to(self, limit: int) -> list[int]:
        return sorted(n for n in self.table if n <= limit)


class _RationalRuleData(_LocalData):
    """Generator rule over the rationals: one place per prime, norm = p."""

    def has(self, v: PlaceNorm) -> bool:
        return v.exponent == 1

    def norms_up_to(self, limit: int) -> list[int]:
        return sieve_primes(limit)

    def satake(self, v: PlaceNorm) -> tuple[complex, ...]:
        if v.exponent != 1:
            raise MissingLocalDataError(
                f"builtin '{self.builtin}' has no place of norm {v.value} "
                f"(rational field: norms are primes)",
                norm=v.value,
            )
        return self._at_prime(v.prime)

    def _at_prime(self, p: int) -> tuple[complex, ...]:
        raise NotImplementedError


class _TrivialData(_RationalRuleData):
    builtin = "trivial"

    def _at_prime(self, p: int) -> tuple[complex, ...]:
        return (complex(1.0),)


class _QuadraticData(_RationalRuleData):
    def __init__(self, modulus: int):
        self.modulus = modulus
        self.builtin = f"dirichlet-quadratic:{modulus}"

    def _at_prime(self, p: int) -> tuple[complex, ...]:
        return (complex(legendre_symbol(p, self.modulus)),)


class _DeltaData(_RationalRuleData):
    builtin = "delta"

    def _at_prime(self, p: int) -> tuple[complex, ...]:
        tau_p = ramanujan_tau(p)[p - 1]
        c = tau_p / p**5.5
        # Roots of X^2 - c X + 1; |c| <= 2 holds for the normalized values,
        # so the pair is conjugate on the unit circle.
        disc = 1.0 - 0.25 * c * c
        if disc >= 0.0:
            root = complex(0.5 * c, math.sqrt(disc))
        else:  # unreachable for genuine data; kept for numeric safety
            root = 0.5 * c + cmath.sqrt(complex(0.25 * c * c - 1.0))
        return _canonical((root, root.conjugate()))


def _builtin_data(name: str) -> _LocalData:
    if name == "trivial":
        return _TrivialData()
    if name == "delta":
        return _DeltaData()
    mq = _QUADRATIC_RE.match(name)
    if mq:
        modulus = int(mq.group(1))
        if modulus < 3 or modulus % 2 == 0:
            raise SpecValidationError(
                f"dirichlet-quadratic modulus must be an odd number >= 3, got {modulus}"
            )
        return _QuadraticData(modulus)
    raise SpecValidationError(f"unknown builtin finite-local rule: {name!r}")


@dataclass(frozen=True)
class RepresentationSpec:
    """Invariants of one representation: degrees, conductor, local data."""

    name: str
    m: int
    l: int
    q_arith: int
    arch_params: tuple[complex, ...]
    local: _LocalData = field(repr=False, compare=False)

    def __post_init__(self):
        if self.m < 1:
            raise SpecValidationError("degree must be positive")
        if self.l < 1:
            raise SpecValidationError("field degree must be positive")
        if self.q_arith < 1:
            raise SpecValidationError("arithmetic conductor must be a positive integer")
        if len(self.arch_params) != self.m * self.l:
            raise SpecValidationError(
                f"arch_params must have m*l = {self.m * self.l} entries, "
                f"got {len(self.arch_params)}"
            )

    def has_place(self, v: "PlaceNorm | int") -> bool:
        return self.local.has(_as_place(v))

    def place_norms(self, limit: int) -> list[int]:
        return self.local.norms_up_to(limit)

    def to_document(self) -> dict:
        """Serialize back to the spec-file schema."""
        doc = {
            "name": self.name,
            "m": self.m,
            "l": self.l,
            "q_arith": self.q_arith,
            "arch_params": [[z.real, z.imag] for z in self.arch_params],
        }
        if self.local.builtin is not None:
            doc["finite_local"] = {"builtin": self.local.builtin}
        else:
            table = self.local.table  # type: ignore[attr-defined]
            doc["finite_local"] = {
                "table": {
                    str(n): [[z.real, z.imag] for z in table[n]] for n in sorted(table)
                }
            }
        return doc


def satake_at(spec: RepresentationSpec, v: "PlaceNorm | int") -> tuple[complex, ...]:
    """The canonicalized Satake multiset {alpha_j} of spec at place norm v.

    Deterministic: entries sorted by real part, then imaginary part.
    Raises MissingLocalDataError when the spec has no data at v.
    """
    place = _as_place(v)
    if not spec.local.has(place):
        raise MissingLocalDataError(
            f"spec '{spec.name}' has no Satake data at place norm {place.value}",
            norm=place.value,
        )
    values = _canonical(spec.local.satake(place))
    if len(values) != spec.m:
        raise SpecValidationError(
            f"spec '{spec.name}' carries {len(values)} Satake values at norm "
            f"{place.value}, expected m = {spec.m}"
        )
    return values


def locally_equivalent(
    a: RepresentationSpec,
    b: RepresentationSpec,
    v: "PlaceNorm | int",
    tol: float = DEFAULT_EQUIVALENCE_TOL,
) -> bool:
    """True iff the canonical Satake multisets of a and b at v match within tol.

    Distinct degrees are never comparable locally and return False (callers
    report them as differing at every place).
    """
    if tol < 0:
        raise ValueError("tolerance must be nonnegative")
    if a.m != b.m:
        return False
    sa = satake_at(a, v)
    sb = satake_at(b, v)
    return all(abs(x - y) <= tol for x, y in zip(sa, sb))


# ---------------------------------------------------------------------------
# Spec-file ingestion


def _parse_complex_entry(entry, what: str) -> complex:
    if (
        not isinstance(entry, (list, tuple))
        or len(entry) != 2
        or not all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in entry)
    ):
        raise SpecValidationError(f"{what} entries must be [re, im] number pairs")
    return complex(entry[0], entry[1])


def _require_positive_int(doc: dict, key: str, label: str) -> int:
    value = doc.get(key)
    if not isinstance(value, int) or isinstance(value, bool):
        raise SpecValidationError(f"{label} must be an integer")
    if value < 1:
        raise SpecValidationError(f"{label} must be positive")
    return value


_BUILTIN_SHAPE = {"trivial": (1, 1, 1), "delta": (2, 1, 1)}


def load_spec(document: "dict | str") -> RepresentationSpec:
    """Validate and materialize one spec-file document.

    Accepts the parsed object or raw JSON text.  All schema and invariant
    violations raise SpecValidationError with a specific message; table data
    is checked against the trivial bound |alpha| <= sqrt(N(v)) on load.
    """
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SpecValidationError(f"malformed spec document: {exc}") from exc
    if not isinstance(document, dict):
        raise SpecValidationError("spec document must be a JSON object")

    name = document.get("name")
    if not isinstance(name, str) or not name:
        raise SpecValidationError("spec must carry a non-empty string 'name'")
    m = document.get("m")
    if not isinstance(m, int) or isinstance(m, bool):
        raise SpecValidationError("degree m must be an integer")
    if m < 1:
        raise SpecValidationError("degree must be positive")
    l = _require_positive_int(document, "l", "field degree l")
    q_arith = _require_positive_int(document, "q_arith", "arithmetic conductor q_arith")

    raw_arch = document.get("arch_params")
    if not isinstance(raw_arch, list):
        raise SpecValidationError("arch_params must be a list of [re, im] pairs")
    arch = tuple(_parse_complex_entry(e, "arch_params") for e in raw_arch)
    if len(arch) != m * l:
        raise SpecValidationError(
            f"arch_params must have m*l = {m * l} entries, got {len(arch)}"
        )

    finite = document.get("finite_local")
    if not isinstance(finite, dict) or len(finite) != 1:
        raise SpecValidationError(
            "finite_local must be exactly one of {'builtin': ...} or {'table': ...}"
        )
    if "builtin" in finite:
        rule = finite["builtin"]
        if not isinstance(rule, str):
            raise SpecValidationError("finite_local.builtin must be a string")
        local = _builtin_data(rule)
        shape = _BUILTIN_SHAPE.get(rule, (1, 1, None))
        if (m, l) != shape[:2]:
            raise SpecValidationError(
                f"builtin '{rule}' requires m={shape[0]}, l={shape[1]}"
            )
        if _QUADRATIC_RE.match(rule) and q_arith != local.modulus:  # type: ignore[attr-defined]
            raise SpecValidationError(
                f"builtin '{rule}' requires q_arith = {local.modulus}"  # type: ignore[attr-defined]
            )
        if rule in ("trivial", "delta") and q_arith != 1:
            raise SpecValidationError(f"builtin '{rule}' requires q_arith = 1")
    elif "table" in finite:
        raw_table = finite["table"]
        if not isinstance(raw_table, dict):
            raise SpecValidationError("finite_local.table must be an object")
        table: dict[int, tuple[complex, ...]] = {}
        for key, entries in raw_table.items():
            try:
                norm = int(key)
            except (TypeError, ValueError):
                raise SpecValidationError(
                    f"table key {key!r} is not an integer place norm"
                ) from None
            place = PlaceNorm.from_value(norm)
            if not isinstance(entries, list) or len(entries) != m:
                raise SpecValidationError(
                    f"Satake multiset at norm {norm} must have exactly m = {m} values"
                )
            values = tuple(_parse_complex_entry(e, f"table[{norm}]") for e in entries)
            bound = math.sqrt(place.value) + 1e-9
            for z in values:
                if abs(z) > bound:
                    raise SpecValidationError(
                        f"Satake value {z} at norm {norm} exceeds the trivial "
                        f"bound sqrt(N(v)) = {math.sqrt(place.value):.6f}"
                    )
            table[norm] = _canonical(values)
        local = _TableData(table)
    else:
        raise SpecValidationError(
            "finite_local must be exactly one of {'builtin': ...} or {'table': ...}"
        )

    return RepresentationSpec(
        name=name, m=m, l=l, q_arith=q_arith, arch_params=arch, local=local
    )


def load_spec_file(path: "str | Path") -> RepresentationSpec:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SpecValidationError(f"unreadable spec file {path}: {exc}") from exc
    return load_spec(text)


# ---------------------------------------------------------------------------
# Built-in catalog

CATALOG_NAMES = (
    "trivial",
    "dirichlet-quadratic:5",
    "dirichlet-quadratic:13",
    "dirichlet-quadratic:17",
    "delta",
)


def catalog_spec(name: str) -> RepresentationSpec:
    """One of the built-in catalog specs, by rule name."""
    if name == "trivial":
        return RepresentationSpec(
            name="trivial",
            m=1,
            l=1,
            q_arith=1,
            arch_params=(0j,),
            local=_TrivialData(),
        )
    if name == "delta":
        # Archimedean parameters of the weight-12 form: {11/2, 13/2}.
        return RepresentationSpec(
            name="delta",
            m=2,
            l=1,
            q_arith=1,
            arch_params=(complex(5.5), complex(6.5)),
            local=_DeltaData(),
        )
    mq = _QUADRATIC_RE.match(name)
    if mq:
        modulus = int(mq.group(1))
        return RepresentationSpec(
            name=name,
            m=1,
            l=1,
            q_arith=modulus,
            arch_params=(0j,),
            local=_QuadraticData(modulus),
        )
    raise SpecValidationError(f"unknown catalog name: {name!r}")


def catalog() -> list[RepresentationSpec]:
    return [catalog_spec(n) for n in CATALOG_NAMES]


# ---------------------------------------------------------------------------
# Rankin-Selberg pairs


@dataclass(frozen=True)
class RankinSelbergPair:
    """An ordered pair (pi, contragredient of pi') with derived invariants.

    ``pair_arch_params`` defaults to the unramified-at-infinity rule
    {b(j) + conj(b'(j'))} over all j, j', which is only well defined for
    l = 1; pairs over larger fields must supply the parameters explicitly.
    The swapped pair carries the complex-conjugate parameters.

    ``q_pair`` defaults to 1 when both arithmetic conductors are 1 and is
    otherwise required from the caller; operations that need it raise
    UnresolvedPairConductorError when it was never supplied.
    """

    left: RepresentationSpec
    right: RepresentationSpec
    pair_arch_params: tuple[complex, ...] = ()
    q_pair_explicit: int | None = None

    def __post_init__(self):
        if self.left.l != self.right.l:
            raise SpecValidationError(
                "cannot pair specs over fields of different degree "
                f"({self.left.l} vs {self.right.l})"
            )
        expected = self.left.m * self.right.m * self.left.l
        if not self.pair_arch_params:
            if self.left.l != 1:
                raise SpecValidationError(
                    "automatic pair parameters are defined only for l = 1; "
                    "supply pair_arch_params explicitly"
                )
            derived = _canonical(
                ba + bb.conjugate()
                for ba in self.left.arch_params
                for bb in self.right.arch_params
            )
            object.__setattr__(self, "pair_arch_params", derived)
        else:
            object.__setattr__(
                self, "pair_arch_params", tuple(complex(z) for z in self.pair_arch_params)
            )
        if len(self.pair_arch_params) != expected:
            raise SpecValidationError(
                f"pair_arch_params must have m*m'*l = {expected} entries, "
                f"got {len(self.pair_arch_params)}"
            )
        if self.q_pair_explicit is not None and self.q_pair_explicit < 1:
            raise SpecValidationError("q_pair must be a positive integer")

    @property
    def degree(self) -> int:
        """Total archimedean degree m * m' * l."""
        return self.left.m * self.right.m * self.left.l

    @property
    def q_pair(self) -> int:
        if self.q_pair_explicit is not None:
            return self.q_pair_explicit
        if self.left.q_arith == 1 and self.right.q_arith == 1:
            return 1
        raise UnresolvedPairConductorError(
            f"pair conductor for ({self.left.name}, {self.right.name}) was not "
            "supplied and both specs are not of conductor 1"
        )

    def swapped(self) -> "RankinSelbergPair":
        """The pair with roles exchanged; parameters are the conjugates."""
        return RankinSelbergPair(
            left=self.right,
            right=self.left,
            pair_arch_params=tuple(z.conjugate() for z in self.pair_arch_params),
            q_pair_explicit=self.q_pair_explicit,
        )

    def local_products(self, v: "PlaceNorm | int") -> tuple[complex, ...]:
        """Satake products alpha_j * conj(alpha'_j') at place norm v."""
        sa = satake_at(self.left, v)
        sb = satake_at(self.right, v)
        return _canonical(x * y.conjugate() for x in sa for y in sb)


def self_pair(spec: RepresentationSpec) -> RankinSelbergPair:
    return RankinSelbergPair(left=spec, right=spec)
