"""[[n,k,d]] stabilizer codes: validation, syndromes, group membership,
residual classification and brute-force distance search.

A code is a named list of m = n-k commuting, independent generators plus k
logical (X̄_i, Z̄_i) pairs.  Syndrome bit i is the measurement outcome of
``generators[i]``: 0 when the generator commutes with the error, 1 when it
anti-commutes.  Generator order is part of the code definition — it fixes
the syndrome bit order, and the built-in codes list generators exactly in
the order their published syndrome tables assume.

Stabilizer-group membership is symplectic-span membership: global phases
are ignored throughout (stabilizers are treated projectively).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from ._gf2 import RowBasis
from .pauli import (
    PauliOperator,
    commutes,
    enumerate_paulis,
    format_sparse,
    parse,
)

_RESIDUAL_LETTER = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}


@dataclass(frozen=True)
class Syndrome:
    """Measurement outcomes, bit i for generator i; str() reads bit 0 first."""

    bits: tuple[int, ...]

    def __post_init__(self):
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("syndrome bits must be 0 or 1")

    @classmethod
    def from_int(cls, value: int, m: int) -> "Syndrome":
        return cls(tuple((value >> i) & 1 for i in range(m)))

    @classmethod
    def from_string(cls, text: str) -> "Syndrome":
        return cls(tuple(int(c) for c in text))

    @property
    def value(self) -> int:
        """Packed form; bit i of the int is syndrome bit i."""
        v = 0
        for i, b in enumerate(self.bits):
            v |= b << i
        return v

    @property
    def is_zero(self) -> bool:
        return not any(self.bits)

    def __len__(self) -> int:
        return len(self.bits)

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


@dataclass(frozen=True)
class ResidualClass:
    """Outcome of a recovery: Success, or the per-logical-qubit Pauli class."""

    success: bool
    logical_classes: tuple[str, ...]

    @property
    def verdict(self) -> str:
        return "Success" if self.success else "LogicalFailure"


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    problems: tuple[str, ...]


@dataclass(eq=True)
class StabilizerCode:
    """Treat instances as immutable once built; derived structures are cached."""

    name: str
    n: int
    k: int
    generators: tuple[PauliOperator, ...]
    logicals: tuple[tuple[PauliOperator, PauliOperator], ...]
    declared_distance: int | None = None
    layout: "object | None" = None  # SurfaceLayout for lattice codes

    def __post_init__(self):
        self.generators = tuple(self.generators)
        self.logicals = tuple((x, z) for x, z in self.logicals)

    @property
    def m(self) -> int:
        return len(self.generators)

    # -- cached symplectic machinery ------------------------------------

    @cached_property
    def _stab_basis(self) -> RowBasis:
        return RowBasis([self._symplectic(g) for g in self.generators])

    def _symplectic(self, p: PauliOperator) -> int:
        return p.x_bits | (p.z_bits << self.n)

    # -- operations ------------------------------------------------------

    def syndrome_value(self, error: PauliOperator) -> int:
        """Packed syndrome (bit i = generator i); the Monte Carlo hot path."""
        if error.n != self.n:
            raise ValueError(f"error acts on {error.n} qubits, code has {self.n}")
        ex, ez = error.x_bits, error.z_bits
        v = 0
        for i, g in enumerate(self.generators):
            if (g.x_bits & ez).bit_count() + (g.z_bits & ex).bit_count() & 1:
                v |= 1 << i
        return v

    def syndrome(self, error: PauliOperator) -> Syndrome:
        return Syndrome.from_int(self.syndrome_value(error), self.m)

    def in_stabilizer_group(self, p: PauliOperator) -> bool:
        if p.n != self.n:
            raise ValueError(f"operator acts on {p.n} qubits, code has {self.n}")
        return self._stab_basis.contains(self._symplectic(p))

    def residual_class(self, residual: PauliOperator) -> ResidualClass:
        """Classify a zero-syndrome residual (Eq.-style success/failure split).

        The class on logical qubit i picks up an X component when the
        residual anti-commutes with Z̄_i and a Z component when it
        anti-commutes with X̄_i.
        """
        if self.syndrome_value(residual) != 0:
            raise ValueError("residual has nonzero syndrome; not a codespace operator")
        classes = []
        for xbar, zbar in self.logicals:
            x_comp = 0 if commutes(residual, zbar) else 1
            z_comp = 0 if commutes(residual, xbar) else 1
            classes.append(_RESIDUAL_LETTER[(x_comp, z_comp)])
        success = self.in_stabilizer_group(residual)
        return ResidualClass(success, tuple(classes))

    def validate(self, distance_max_weight: int | None = None) -> ValidationReport:
        """Check every structural invariant; optionally cross-check the
        declared distance by exhaustive search up to distance_max_weight."""
        problems: list[str] = []
        if self.m != self.n - self.k:
            problems.append(f"generator count {self.m} != n-k = {self.n - self.k}")
        for i, g in enumerate(self.generators):
            if g.n != self.n:
                problems.append(f"generator {i + 1} acts on {g.n} qubits, code has {self.n}")
            if g.phase_exp != 0:
                problems.append(f"generator {i + 1} has nontrivial phase")
        for i in range(self.m):
            for j in range(i + 1, self.m):
                if not commutes(self.generators[i], self.generators[j]):
                    problems.append(f"generators {i + 1} and {j + 1} anti-commute")
        basis = RowBasis()
        for i, g in enumerate(self.generators):
            if not basis.insert(self._symplectic(g)):
                problems.append(f"generator {i + 1} is a product of earlier generators")
        if len(self.logicals) != self.k:
            problems.append(f"expected {self.k} logical pairs, got {len(self.logicals)}")
        for i, (xbar, zbar) in enumerate(self.logicals, 1):
            for j, g in enumerate(self.generators, 1):
                if not commutes(xbar, g):
                    problems.append(f"logical X{i} anti-commutes with generator {j}")
                if not commutes(zbar, g):
                    problems.append(f"logical Z{i} anti-commutes with generator {j}")
            if commutes(xbar, zbar):
                problems.append(f"logical pair {i}: X{i} and Z{i} commute")
            for j, (xo, zo) in enumerate(self.logicals, 1):
                if j == i:
                    continue
                if not commutes(xbar, xo) or not commutes(xbar, zo):
                    problems.append(f"logical X{i} anti-commutes with pair {j}")
                if not commutes(zbar, xo) or not commutes(zbar, zo):
                    problems.append(f"logical Z{i} anti-commutes with pair {j}")
            if self.in_stabilizer_group(xbar):
                problems.append(f"logical X{i} lies in the stabilizer span")
            if self.in_stabilizer_group(zbar):
                problems.append(f"logical Z{i} lies in the stabilizer span")
        if distance_max_weight is not None and self.declared_distance is not None:
            found = distance(self, distance_max_weight)
            if found != self.declared_distance:
                problems.append(
                    f"declared distance {self.declared_distance} but search found {found}"
                )
        return ValidationReport(not problems, tuple(problems))

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "n": self.n,
            "k": self.k,
            "generators": [format_sparse(g) for g in self.generators],
            "logicals": [[format_sparse(x), format_sparse(z)] for x, z in self.logicals],
            "declared_distance": self.declared_distance,
        }
        if self.layout is not None:
            out["layout"] = self.layout.to_dict()
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "StabilizerCode":
        from .code_library import SurfaceLayout  # cycle-free at call time

        n = data["n"]
        layout = data.get("layout")
        return cls(
            name=data["name"],
            n=n,
            k=data["k"],
            generators=tuple(parse(s, n=n) for s in data["generators"]),
            logicals=tuple(
                (parse(x, n=n), parse(z, n=n)) for x, z in data["logicals"]
            ),
            declared_distance=data.get("declared_distance"),
            layout=SurfaceLayout.from_dict(layout) if layout else None,
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "StabilizerCode":
        return cls.from_dict(json.loads(text))


def distance(
    code: StabilizerCode,
    max_weight: int,
    letters: Sequence[str] = ("X", "Y", "Z"),
) -> int | None:
    """Smallest w <= max_weight with an undetected non-stabilizer weight-w
    Pauli (letters restrictable, e.g. ("X",) for the bit-flip-only distance
    of a detection code).  None means: greater than max_weight.
    """
    if not 1 <= max_weight <= code.n:
        raise ValueError(f"max_weight must be in 1..{code.n}")
    for w in range(1, max_weight + 1):
        for p in enumerate_paulis(code.n, w, letters):
            if all(commutes(p, g) for g in code.generators):
                if not code.in_stabilizer_group(p):
                    return w
    return None


def correctable_weight(d: int) -> int:
    """Errors correctable at distance d: t = floor((d-1)/2) from d = 2t+1."""
    if d < 1:
        raise ValueError(f"distance must be >= 1, got {d}")
    return (d - 1) // 2
