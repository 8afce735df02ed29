"""Exact intersection-ring models of compact Kahler varieties.

A model is a named divisor basis of H^{1,1} together with a fully symmetric
intersection tensor with rational entries, a distinguished Kahler class, and
a finite list of subvariety models, each carrying the restricted symmetric
multilinear functional "integrate a p-fold wedge over V". Every number in
this module is a ``fractions.Fraction``; no floating point enters.

Verdicts computed downstream are relative to the supplied subvariety family.
For the projective-space builtins the family is provably sufficient: any
p-dimensional irreducible subvariety of CP^n has class d * H^(n-p) with
d >= 1, and every checked quantity is homogeneous of degree 1 in d, so the
degree-1 representative decides them all.
"""

from __future__ import annotations

import importlib.resources
import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Iterable, Mapping, Sequence

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .errors import ModelError, ModelParseError

RATIONAL_RE = re.compile(r"^-?[0-9]+(/[1-9][0-9]*)?$")

CPSTAR_FAMILY_NOTE = (
    "subvariety family is complete for this model: every p-dimensional "
    "irreducible subvariety has class d*H^(n-p), d >= 1, and all checked "
    "quantities are homogeneous of degree 1 in d"
)
FAMILY_RELATIVE_NOTE = (
    "verdicts are relative to the listed subvariety family; sufficiency "
    "statements assume the family is adequate"
)


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not RATIONAL_RE.match(text):
        raise ModelParseError(f"not a rational literal: {text!r}")
    return Fraction(text)


def format_rational(x: Fraction) -> str:
    return str(x)


@dataclass(frozen=True)
class CohomClass:
    """Real (1,1)-class as exact rational coefficients over a divisor basis."""

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable):
        object.__setattr__(
            self, "coeffs", tuple(c if isinstance(c, Fraction) else Fraction(c) for c in coeffs)
        )

    @classmethod
    def parse(cls, text: str | Sequence) -> "CohomClass":
        if isinstance(text, str):
            parts = [p for p in text.split(",") if p.strip()]
            return cls([parse_rational(p) for p in parts])
        return cls(text)

    @classmethod
    def zero(cls, n: int) -> "CohomClass":
        return cls([Fraction(0)] * n)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __add__(self, other: "CohomClass") -> "CohomClass":
        return CohomClass([a + b for a, b in zip(self.coeffs, other.coeffs, strict=True)])

    def __sub__(self, other: "CohomClass") -> "CohomClass":
        return CohomClass([a - b for a, b in zip(self.coeffs, other.coeffs, strict=True)])

    def __neg__(self) -> "CohomClass":
        return CohomClass([-a for a in self.coeffs])

    def scale(self, c) -> "CohomClass":
        c = Fraction(c)
        return CohomClass([c * a for a in self.coeffs])

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def as_strings(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]


def _normalize_entries(entries: Mapping[tuple[int, ...], Fraction]) -> dict[tuple[int, ...], Fraction]:
    out: dict[tuple[int, ...], Fraction] = {}
    for key, val in entries.items():
        skey = tuple(sorted(key))
        val = Fraction(val)
        if skey in out and out[skey] != val:
            raise ModelError(f"conflicting entries for index tuple {skey}: {out[skey]} vs {val}")
        if val != 0:
            out[skey] = val
    return out


@dataclass(frozen=True)
class SubvarietyModel:
    """A p-dimensional cycle with its restricted intersection functional.

    ``functional`` maps sorted basis-index p-tuples to the rational value of
    integrating the corresponding wedge of basis divisors over the cycle.
    The ambient variety itself is represented by the entry with p = n.
    """

    name: str
    dim: int
    basis_size: int
    functional: dict[tuple[int, ...], Fraction] = field(compare=True)

    def __init__(self, name: str, dim: int, basis_size: int, functional: Mapping):
        if dim < 1:
            raise ModelError(f"subvariety {name!r}: dimension must be >= 1, got {dim}")
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "basis_size", basis_size)
        object.__setattr__(self, "functional", _normalize_entries(functional))
        for key in self.functional:
            if len(key) != dim or any(i < 0 or i >= basis_size for i in key):
                raise ModelError(f"subvariety {name!r}: bad index tuple {key}")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SubvarietyModel)
            and self.name == other.name
            and self.dim == other.dim
            and self.basis_size == other.basis_size
            and self.functional == other.functional
        )

    def integrate(self, classes: Sequence[CohomClass]) -> Fraction:
        """Exact value of the p-fold wedge of the given classes over this cycle."""
        if len(classes) != self.dim:
            raise ModelError(
                f"subvariety {self.name!r} has dimension {self.dim}, got {len(classes)} classes"
            )
        for c in classes:
            if len(c) != self.basis_size:
                raise ModelError(
                    f"class has {len(c)} coefficients, model basis has {self.basis_size}"
                )
        total = Fraction(0)
        for idx in itertools.product(range(self.basis_size), repeat=self.dim):
            val = self.functional.get(tuple(sorted(idx)))
            if val:
                total += val * prod(c.coeffs[i] for c, i in zip(classes, idx))
        return total


@dataclass(frozen=True)
class VarietyModel:
    """Ambient variety: basis, symmetric intersection tensor, distinguished
    Kahler class, and the finite subvariety family (ambient included)."""

    name: str
    dim: int
    basis: tuple[str, ...]
    tensor: dict[tuple[int, ...], Fraction]
    omega: CohomClass
    subvarieties: tuple[SubvarietyModel, ...]
    family_note: str | None = None

    def __init__(self, name, dim, basis, tensor, omega, subvarieties=(), family_note=None):
        basis = tuple(basis)
        if dim < 1:
            raise ModelError(f"model {name!r}: dimension must be >= 1")
        if len(set(basis)) != len(basis):
            raise ModelError(f"model {name!r}: duplicate basis names")
        tensor = _normalize_entries(tensor)
        for key in tensor:
            if len(key) != dim or any(i < 0 or i >= len(basis) for i in key):
                raise ModelError(f"model {name!r}: bad tensor index tuple {key}")
        omega = omega if isinstance(omega, CohomClass) else CohomClass(omega)
        if len(omega) != len(basis):
            raise ModelError(f"model {name!r}: omega has wrong coefficient count")

        subs = list(subvarieties)
        if not any(v.dim == dim for v in subs):
            subs.append(SubvarietyModel("X", dim, len(basis), tensor))
        for v in subs:
            if v.dim > dim:
                raise ModelError(f"subvariety {v.name!r}: dimension exceeds ambient {dim}")
            if v.basis_size != len(basis):
                raise ModelError(f"subvariety {v.name!r}: basis size mismatch")
        if len({v.name for v in subs}) != len(subs):
            raise ModelError(f"model {name!r}: duplicate subvariety names")

        object.__setattr__(self, "name", name)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "tensor", tensor)
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "subvarieties", tuple(subs))
        object.__setattr__(self, "family_note", family_note)
        self._validate_omega_positivity()

    def _validate_omega_positivity(self) -> None:
        for v in self.subvarieties:
            vol = v.integrate([self.omega] * v.dim)
            if vol <= 0:
                raise ModelError(
                    f"model {self.name!r}: omega volume over {v.name!r} is {vol}, must be > 0"
                )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, VarietyModel)
            and self.name == other.name
            and self.dim == other.dim
            and self.basis == other.basis
            and self.tensor == other.tensor
            and self.omega == other.omega
            and self.subvarieties == other.subvarieties
        )

    @property
    def ambient(self) -> SubvarietyModel:
        for v in self.subvarieties:
            if v.dim == self.dim:
                return v
        raise ModelError("no ambient subvariety entry")  # unreachable by construction

    @property
    def proper_subvarieties(self) -> tuple[SubvarietyModel, ...]:
        return tuple(v for v in self.subvarieties if v.dim < self.dim)

    def subvariety(self, name: str) -> SubvarietyModel:
        for v in self.subvarieties:
            if v.name == name:
                return v
        raise ModelError(f"no subvariety named {name!r} in model {self.name!r}")

    def cohom_class(self, spec: str | Sequence) -> CohomClass:
        c = CohomClass.parse(spec)
        if len(c) != len(self.basis):
            raise ModelError(
                f"class needs {len(self.basis)} coefficients for basis {self.basis}, got {len(c)}"
            )
        return c


def restrict_intersect(v: SubvarietyModel, classes: Sequence[CohomClass]) -> Fraction:
    """Exact multilinear intersection of dim(V) classes against V."""
    return v.integrate(classes)


def wedge_mix_integral(v: SubvarietyModel, alpha: CohomClass, omega: CohomClass, k: int) -> Fraction:
    """Integral over V of alpha^k wedge omega^(p-k), 0 <= k <= p = dim V."""
    if not 0 <= k <= v.dim:
        raise ModelError(f"wedge power k={k} out of range 0..{v.dim}")
    return v.integrate([alpha] * k + [omega] * (v.dim - k))


def complex_wedge_integral(
    v: SubvarietyModel,
    a: CohomClass,
    b: CohomClass,
    k: int,
    extras: Sequence[CohomClass] = (),
) -> tuple[Fraction, Fraction]:
    """Exact (real, imaginary) parts of integral_V (a + i*b)^k wedge extras.

    Requires k + len(extras) = dim V; expands the binomial and routes the
    powers of i into signed rational contributions.
    """
    from math import comb

    if k < 0 or k + len(extras) != v.dim:
        raise ModelError(
            f"need k + extras = {v.dim} for {v.name!r}, got k={k}, extras={len(extras)}"
        )
    re = Fraction(0)
    im = Fraction(0)
    for j in range(k + 1):
        val = comb(k, j) * v.integrate([a] * (k - j) + [b] * j + list(extras))
        m = j % 4
        if m == 0:
            re += val
        elif m == 1:
            im += val
        elif m == 2:
            re -= val
        else:
            im -= val
    return re, im


# ---------------------------------------------------------------------------
# built-in models


def _cpn(n: int) -> VarietyModel:
    tensor = {(0,) * n: Fraction(1)}
    subs = []
    if n >= 2:
        subs.append(SubvarietyModel("line", 1, 1, {(0,): Fraction(1)}))
    if n >= 3:
        subs.append(SubvarietyModel("plane", 2, 1, {(0, 0): Fraction(1)}))
    return VarietyModel(
        name=f"cp{n}",
        dim=n,
        basis=("H",),
        tensor=tensor,
        omega=CohomClass([1]),
        subvarieties=subs,
        family_note=CPSTAR_FAMILY_NOTE,
    )


def _blp_cp2() -> VarietyModel:
    one = Fraction(1)
    tensor = {(0, 0): one, (1, 1): -one}
    subs = [
        SubvarietyModel("E", 1, 2, {(1,): -one}),
        SubvarietyModel("H-E", 1, 2, {(0,): one, (1,): one}),
        SubvarietyModel("H", 1, 2, {(0,): one}),
    ]
    return VarietyModel(
        name="blp_cp2",
        dim=2,
        basis=("H", "E"),
        tensor=tensor,
        omega=CohomClass([2, -1]),
        subvarieties=subs,
    )


def _p1xp1() -> VarietyModel:
    one = Fraction(1)
    tensor = {(0, 1): one}
    subs = [
        SubvarietyModel("F1", 1, 2, {(1,): one}),
        SubvarietyModel("F2", 1, 2, {(0,): one}),
    ]
    return VarietyModel(
        name="p1xp1",
        dim=2,
        basis=("F1", "F2"),
        tensor=tensor,
        omega=CohomClass([1, 1]),
        subvarieties=subs,
    )


_BUILTINS = {
    "cp1": lambda: _cpn(1),
    "cp2": lambda: _cpn(2),
    "cp3": lambda: _cpn(3),
    "blp_cp2": _blp_cp2,
    "p1xp1": _p1xp1,
}


def builtin_names() -> tuple[str, ...]:
    return tuple(sorted(_BUILTINS))


def build_builtin(name: str) -> VarietyModel:
    """One of: cp1, cp2, cp3 (hyperplane class H), blp_cp2 (basis H, E with
    H^2 = 1, E^2 = -1, H.E = 0 and family {E, H-E, H, X}), p1xp1."""
    try:
        factory = _BUILTINS[name]
    except KeyError:
        raise ModelError(f"unknown builtin model {name!r}; known: {', '.join(builtin_names())}")
    return factory()


# ---------------------------------------------------------------------------
# model files (TOML; grammar documented in the README)


def _parse_key(key: str, basis: Sequence[str], arity: int, where: str) -> tuple[int, ...]:
    parts = key.split(".")
    if len(parts) != arity:
        raise ModelParseError(f"{where}: key {key!r} must have {arity} dot-separated names")
    try:
        idx = tuple(basis.index(p) for p in parts)
    except ValueError:
        raise ModelParseError(f"{where}: key {key!r} uses a name outside basis {list(basis)}")
    return idx


def _parse_entries(table: Mapping[str, str], basis, arity, where) -> dict[tuple[int, ...], Fraction]:
    out: dict[tuple[int, ...], Fraction] = {}
    for key, val in table.items():
        idx = tuple(sorted(_parse_key(key, basis, arity, where)))
        if not isinstance(val, str):
            raise ModelParseError(f"{where}: value for {key!r} must be a rational string")
        rat = parse_rational(val)
        if idx in out and out[idx] != rat:
            raise ModelParseError(
                f"{where}: conflicting duplicate entries for {key!r}: {out[idx]} vs {rat}"
            )
        out[idx] = rat
    return out


def parse_model(text: str) -> VarietyModel:
    """Parse a model document. Raises ModelParseError with a description of
    the first violation found."""
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ModelParseError(f"not a well-formed model document: {exc}")

    for key in ("name", "dim", "basis", "tensor", "omega"):
        if key not in doc:
            raise ModelParseError(f"missing required field {key!r}")
    name = doc["name"]
    dim = doc["dim"]
    basis = doc["basis"]
    if not isinstance(name, str):
        raise ModelParseError("'name' must be a string")
    if not isinstance(dim, int) or dim < 1:
        raise ModelParseError("'dim' must be a positive integer")
    if not isinstance(basis, list) or not all(isinstance(b, str) for b in basis):
        raise ModelParseError("'basis' must be a list of strings")

    tensor = _parse_entries(doc["tensor"], basis, dim, "tensor")
    omega_tbl = doc["omega"]
    if not isinstance(omega_tbl, dict):
        raise ModelParseError("'omega' must be a table basis-name -> rational string")
    omega_coeffs = []
    for b in basis:
        raw = omega_tbl.get(b, "0")
        if not isinstance(raw, str):
            raise ModelParseError(f"omega[{b!r}] must be a rational string")
        omega_coeffs.append(parse_rational(raw))

    subs = []
    for i, sub in enumerate(doc.get("subvarieties", [])):
        where = f"subvarieties[{i}]"
        if not isinstance(sub, dict):
            raise ModelParseError(f"{where}: must be a table")
        for key in ("name", "dim", "functional"):
            if key not in sub:
                raise ModelParseError(f"{where}: missing {key!r}")
        sdim = sub["dim"]
        if not isinstance(sdim, int) or not 1 <= sdim <= dim:
            raise ModelParseError(f"{where}: dim must be an integer in 1..{dim}")
        if sdim == dim:
            raise ModelParseError(
                f"{where}: the ambient variety is implicit; only proper subvarieties are listed"
            )
        func = _parse_entries(sub["functional"], basis, sdim, where)
        subs.append(SubvarietyModel(sub["name"], sdim, len(basis), func))

    try:
        return VarietyModel(name, dim, basis, tensor, CohomClass(omega_coeffs), subs)
    except ModelError as exc:
        raise ModelParseError(str(exc))


def parse_model_file(path) -> VarietyModel:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_model(fh.read())


def serialize_model(model: VarietyModel) -> str:
    """Model document text; parse_model(serialize_model(m)) == m."""

    def entries(table: Mapping[tuple[int, ...], Fraction]) -> list[str]:
        lines = []
        for key in sorted(table):
            joined = ".".join(model.basis[i] for i in key)
            lines.append(f'"{joined}" = "{format_rational(table[key])}"')
        return lines

    out = [
        f'name = "{model.name}"',
        f"dim = {model.dim}",
        "basis = [" + ", ".join(f'"{b}"' for b in model.basis) + "]",
        "",
        "[tensor]",
        *entries(model.tensor),
        "",
        "[omega]",
    ]
    for b, c in zip(model.basis, model.omega.coeffs):
        out.append(f'{b} = "{format_rational(c)}"')
    for v in model.proper_subvarieties:
        out += [
            "",
            "[[subvarieties]]",
            f'name = "{v.name}"',
            f"dim = {v.dim}",
            "",
            "[subvarieties.functional]",
            *entries(v.functional),
        ]
    return "\n".join(out) + "\n"


def load_model(spec: str) -> VarietyModel:
    """Builtin name or path to a model file."""
    if spec in _BUILTINS:
        return build_builtin(spec)
    return parse_model_file(spec)


def packaged_model(name: str) -> VarietyModel:
    """Parse one of the model files shipped with the package (data/*.model)."""
    ref = importlib.resources.files("dhym").joinpath("data", f"{name}.model")
    return parse_model(ref.read_text(encoding="utf-8"))
