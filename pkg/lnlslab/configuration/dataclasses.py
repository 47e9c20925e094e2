"""Pydantic dataclasses"""

from typing import Literal
from pydantic.dataclasses import dataclass
from pydantic import field_validator, ConfigDict

# This turns on validation for value assignments after creation
pydantic_config = ConfigDict(validate_assignment=True, extra="forbid")

OutputFormat = Literal["csv", "json"]
ToleranceProfile = Literal["default", "strict"]


@dataclass(config=pydantic_config)
class SolverConfig:
    """
    n_slope: points per unit of Q in the default rule N(Q) = n_slope * Q + n_offset
    n_offset: constant part of the default rule
    n_cap: largest N chosen by the default rule (an explicit --n may exceed it)
    condition_limit: solves with a larger 1-norm condition estimate are refused
    refinement_steps: iterative refinement steps after the LU solve
    """

    n_slope: float = 10.0
    n_offset: int = 400
    n_cap: int = 3000
    condition_limit: float = 1e12
    refinement_steps: int = 1

    @field_validator("n_slope", "condition_limit")
    @classmethod
    def validate_positive(cls, value: float) -> float:
        """Check that a value is strictly positive

        Args:
            value (float): A number

        Raises:
            ValueError: If the value is zero or negative

        Returns:
            (float): The input value
        """
        if value <= 0:
            raise ValueError(f"{value} is not positive")
        return value

    @field_validator("n_offset", "n_cap")
    @classmethod
    def validate_count(cls, value: int) -> int:
        """Check that a point count is at least one

        Args:
            value (int): A point count

        Raises:
            ValueError: If the count is below one

        Returns:
            (int): The input value
        """
        if value < 1:
            raise ValueError(f"{value} is not a valid number of quadrature points")
        return value

    @field_validator("refinement_steps")
    @classmethod
    def validate_non_negative(cls, value: int) -> int:
        """Check that the number of refinement steps is not negative

        Args:
            value (int): number of steps

        Raises:
            ValueError: If the value is negative

        Returns:
            (int): The input value
        """
        if value < 0:
            raise ValueError(f"{value} refinement steps is negative")
        return value


@dataclass(config=pydantic_config)
class SweepConfig:
    """
    workers: size of the worker pool used for sweeps over Q
    format: default output format of the sweep commands
    output_folder: folder where result files are written when --out is not given
    """

    workers: int = 1
    format: OutputFormat = "csv"
    output_folder: str = "results"

    @field_validator("workers")
    @classmethod
    def validate_workers(cls, value: int) -> int:
        """Check that there is at least one worker

        Args:
            value (int): number of workers

        Raises:
            ValueError: If the value is below one

        Returns:
            (int): The input value
        """
        if value < 1:
            raise ValueError(f"{value} is not a valid number of workers")
        return value

    @field_validator("output_folder")
    @classmethod
    def validate_string_is_not_empty(cls, value: str) -> str:
        """Check if string  is not empty(has at least one char)

        Args:
            value (str): A string

        Raises:
            ValueError: If the value is zero characters long

        Returns:
            (str): The input value
        """
        if not value:
            raise ValueError(f"{value} is an empty string")
        return value


@dataclass(config=pydantic_config)
class ToleranceConfig:
    """
    profile: "default" uses the golden tolerances as shipped,
      "strict" divides every tolerance by strict_factor
    strict_factor: tightening factor of the strict profile
    """

    profile: ToleranceProfile = "default"
    strict_factor: float = 10.0

    @field_validator("strict_factor")
    @classmethod
    def validate_factor(cls, value: float) -> float:
        """Check that the strict factor does not loosen tolerances

        Args:
            value (float): tightening factor

        Raises:
            ValueError: If the factor is below one

        Returns:
            (float): The input value
        """
        if value < 1:
            raise ValueError(f"{value} would loosen the tolerances")
        return value


@dataclass(config=pydantic_config)
class ResurgenceConfig:
    """
    svd_threshold: singular values below svd_threshold * largest are dropped
    n_max: number of inverse powers of Q in the perturbative ansatz
    q_min, q_max: range of the Q grid used for the coefficient fit
    n_records: number of log-spaced Q values in the grid
    """

    svd_threshold: float = 1e-10
    n_max: int = 5
    q_min: float = 20.0
    q_max: float = 500.0
    n_records: int = 60

    @field_validator("svd_threshold")
    @classmethod
    def validate_threshold(cls, value: float) -> float:
        """Check that the relative threshold lies in (0, 1)

        Args:
            value (float): relative singular value threshold

        Raises:
            ValueError: If the threshold is outside (0, 1)

        Returns:
            (float): The input value
        """
        if not 0 < value < 1:
            raise ValueError(f"{value} is not a relative threshold in (0, 1)")
        return value

    @field_validator("n_max", "n_records")
    @classmethod
    def validate_count(cls, value: int) -> int:
        """Check that a count is at least one

        Args:
            value (int): A count

        Raises:
            ValueError: If the count is below one

        Returns:
            (int): The input value
        """
        if value < 1:
            raise ValueError(f"{value} must be at least one")
        return value

    @field_validator("q_min", "q_max")
    @classmethod
    def validate_positive(cls, value: float) -> float:
        """Check that a half-width is positive

        Args:
            value (float): A half-width

        Raises:
            ValueError: If the value is zero or negative

        Returns:
            (float): The input value
        """
        if value <= 0:
            raise ValueError(f"{value} is not positive")
        return value
