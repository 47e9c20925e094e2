"""Records exchanged between the solver sweeps and the asymptotic fits"""

import math
from dataclasses import dataclass, field
from typing import Sequence

import pandas as pd
from dataclasses_json import dataclass_json

from lnlslab.solver.nystrom import SolveOutput
from lnlslab.utils.general import find_duplicates

SWEEP_COLUMNS = ["q_half_width", "rho0", "total_density", "inner_energy", "c_eff"]


@dataclass_json
@dataclass
class SweepRecord:
    """One solve reduced to its scalar observables"""

    q_half_width: float
    rho0: float
    total_density: float
    inner_energy: float
    c_eff: float

    @classmethod
    def from_output(cls, out: SolveOutput) -> "SweepRecord":
        """Reduces a solve to a record"""
        return cls(
            q_half_width=out.q_half_width,
            rho0=out.rho0,
            total_density=out.total_density,
            inner_energy=out.inner_energy,
            c_eff=out.c_eff,
        )

    @classmethod
    def from_values(
        cls,
        q_half_width: float,
        rho0: float,
        total_density: float = math.nan,
        inner_energy: float = math.nan,
    ) -> "SweepRecord":
        """Builds a record with c_eff derived from rho0"""
        return cls(
            q_half_width=q_half_width,
            rho0=rho0,
            total_density=total_density,
            inner_energy=inner_energy,
            c_eff=rho0 - math.log(q_half_width) / math.pi,
        )


@dataclass_json
@dataclass
class FitResult:
    """Least-squares fit of sweep data against a named basis

    spread and stable are filled in when the fit is repeated on a nested
    sub-range: spread is the relative change of each coefficient, and a
    coefficient is stable when its spread is below one half.
    """

    basis_labels: list[str]
    coefficients: list[float]
    residual_max: float
    condition_estimate: float
    fit_range: tuple[float, float]
    kept_modes: int = 0
    spread: list[float] = field(default_factory=list)
    stable: list[bool] = field(default_factory=list)

    def coefficient(self, label: str) -> float:
        """Coefficient of the basis function called label

        Raises:
            KeyError: no such basis function
        """
        try:
            return self.coefficients[self.basis_labels.index(label)]
        except ValueError as exc:
            raise KeyError(
                f"'{label}' is not in the fit basis {self.basis_labels}"
            ) from exc


@dataclass_json
@dataclass
class RichardsonResult:
    """C_eff(Q) = C + a1 log(Q)/Q + a0/Q interpolated through three points"""

    c_extrapolated: float
    a1: float
    a0: float
    q_triple: tuple[float, float, float]


def sort_records(records: Sequence[SweepRecord]) -> list[SweepRecord]:
    """Sorts records by Q

    Raises:
        ValueError: two records share a value of Q
    """
    duplicates = find_duplicates([record.q_half_width for record in records])
    if duplicates:
        raise ValueError(f"Duplicate records for Q = {sorted(duplicates)}")
    return sorted(records, key=lambda record: record.q_half_width)


def records_to_frame(records: Sequence[SweepRecord]) -> pd.DataFrame:
    """Records as a DataFrame with one row per Q"""
    return pd.DataFrame([record.to_dict() for record in sort_records(records)])  # type: ignore[attr-defined]


def records_from_frame(frame: pd.DataFrame) -> list[SweepRecord]:
    """Reads records back from a sweep table.

    Only q_half_width and rho0 are required; c_eff is always recomputed.

    Raises:
        ValueError: a required column is missing
    """
    missing = {"q_half_width", "rho0"} - set(frame.columns)
    if missing:
        raise ValueError(f"The sweep table lacks the columns {sorted(missing)}")
    records = [
        SweepRecord.from_values(
            q_half_width=float(row["q_half_width"]),
            rho0=float(row["rho0"]),
            total_density=float(row.get("total_density", math.nan)),
            inner_energy=float(row.get("inner_energy", math.nan)),
        )
        for _, row in frame.iterrows()
    ]
    return sort_records(records)
