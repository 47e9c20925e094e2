"""Configuration singleton for the lnlslab Package"""

from typing import Optional, Any
import os
import yaml
from lnlslab.utils.general import normalize_path
from .dataclasses import (
    SolverConfig,
    SweepConfig,
    ToleranceConfig,
    ResurgenceConfig,
)


class ConfigNonAllowedFieldError(Exception):
    """Raised when a user submitted config file contains non allowed fields"""

    def __init__(
        self, message: str, fields: list[str], allowed_fields: list[str]
    ) -> None:
        """
        Args:
            message (str):  A message describing the error
            fields (list[str]): The fields in the config
            allowed_fields (list[str]): The allowed fields in the config
        """
        self.message = message
        self.fields = fields
        self.allowed_fields = allowed_fields
        super().__init__(self.message)

    def __str__(self) -> str:
        """String representation"""
        return (
            f"{self.message}; "
            f"config contains fields: {self.fields}; "
            f"allowed fields: {self.allowed_fields}"
        )


class Configuration:
    """
    This class is used as a singleton by the rest of the package.
    It is instantiated only once at the bottom of this file, and that
     instance is imported by other modules
    """

    def __init__(self) -> None:
        self.config_path: Optional[str] = None
        self._parent_directory = os.getcwd()
        self._solver_config = SolverConfig()
        self._sweep_config = SweepConfig()
        self._tolerance_config = ToleranceConfig()
        self._resurgence_config = ResurgenceConfig()

    def load_config(self, config_path: str) -> None:
        """Loads a user created config file and overwrites any defaults  listed in the file

        Args:
            config_path (str): The path to the config file

        Raises:
            ConfigNonAllowedFieldError: If there are non allowed fields in the config file
        """
        allowed_config_fields = {"solver", "sweep", "tolerances", "resurgence"}
        config_path = os.path.expanduser(config_path)
        config_path = os.path.abspath(config_path)
        self.config_path = config_path

        self._parent_directory = os.path.dirname(config_path)

        with open(config_path, "r", encoding="utf-8") as file:
            config: dict[str, Any] = yaml.safe_load(file) or {}
        if not set(config.keys()).issubset(allowed_config_fields):
            raise ConfigNonAllowedFieldError(
                "Non allowed fields in top level of configuration file.",
                list(config.keys()),
                list(allowed_config_fields),
            )

        self._solver_config = SolverConfig(**config.get("solver", {}))
        self._sweep_config = SweepConfig(**config.get("sweep", {}))
        self._tolerance_config = ToleranceConfig(**config.get("tolerances", {}))
        self._resurgence_config = ResurgenceConfig(**config.get("resurgence", {}))

    def reset(self) -> None:
        """Restores every section to its defaults"""
        self.__init__()  # type: ignore[misc]

    @property
    def n_slope(self) -> float:
        """
        Returns:
            float: points per unit half-width in the default rule
        """
        return self._solver_config.n_slope

    @property
    def n_offset(self) -> int:
        """
        Returns:
            int: constant part of the default rule
        """
        return self._solver_config.n_offset

    @property
    def n_cap(self) -> int:
        """
        Returns:
            int: cap applied by the default rule
        """
        return self._solver_config.n_cap

    @property
    def condition_limit(self) -> float:
        """
        Returns:
            float: largest accepted condition estimate of a dense solve
        """
        return self._solver_config.condition_limit

    @property
    def refinement_steps(self) -> int:
        """
        Returns:
            int: iterative refinement steps after the LU solve
        """
        return self._solver_config.refinement_steps

    @property
    def workers(self) -> int:
        """
        Returns:
            int: size of the sweep worker pool
        """
        return self._sweep_config.workers

    @workers.setter
    def workers(self, workers: int) -> None:
        """Sets the size of the sweep worker pool

        Args:
            workers (int): number of workers
        """
        self._sweep_config.workers = workers

    @property
    def output_format(self) -> str:
        """
        Returns:
            str: default output format, "csv" or "json"
        """
        return self._sweep_config.format

    @property
    def output_folder(self) -> str:
        """
        Returns:
            str: folder where result files are written
        """
        return normalize_path(self._sweep_config.output_folder, self._parent_directory)

    @property
    def tolerance_profile(self) -> str:
        """
        Returns:
            str: "default" or "strict"
        """
        return self._tolerance_config.profile

    @tolerance_profile.setter
    def tolerance_profile(self, profile: str) -> None:
        """Sets the tolerance profile

        Args:
            profile (str): "default" or "strict"
        """
        self._tolerance_config.profile = profile  # type: ignore[assignment]

    @property
    def tolerance_scale(self) -> float:
        """
        Returns:
            float: factor every golden tolerance is multiplied by
        """
        if self._tolerance_config.profile == "strict":
            return 1.0 / self._tolerance_config.strict_factor
        return 1.0

    @property
    def svd_threshold(self) -> float:
        """
        Returns:
            float: relative singular value cut of the coefficient fit
        """
        return self._resurgence_config.svd_threshold

    @property
    def resurgence_n_max(self) -> int:
        """
        Returns:
            int: number of inverse powers in the perturbative ansatz
        """
        return self._resurgence_config.n_max

    @property
    def resurgence_q_range(self) -> tuple[float, float]:
        """
        Returns:
            tuple[float, float]: (q_min, q_max) of the coefficient fit grid
        """
        return (self._resurgence_config.q_min, self._resurgence_config.q_max)

    @property
    def resurgence_n_records(self) -> int:
        """
        Returns:
            int: number of Q values in the coefficient fit grid
        """
        return self._resurgence_config.n_records


# This instantiates the singleton for the rest of the package
CONFIG = Configuration()
