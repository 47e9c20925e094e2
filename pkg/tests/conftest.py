import logging
import os

import pytest

from lnlslab.asymptotics.records import SweepRecord
from lnlslab.asymptotics.resurgence import coefficient_records
from lnlslab.configuration.configuration import CONFIG
from lnlslab.solver.sweep import sweep_solve

logging.basicConfig(level=logging.DEBUG)
logger = logging.getLogger(__name__)

# Silence some very verbose loggers
logging.getLogger("joblib").setLevel(logging.INFO)


TESTS_DIR = os.path.dirname(os.path.abspath(__file__))
DATA_DIR = os.path.join(TESTS_DIR, "data")

CEFF_Q = [10.0, 50.0, 100.0, 200.0, 300.0]
RICHARDSON_Q = [50.0, 60.0, 80.0, 100.0, 120.0, 150.0, 200.0, 250.0, 300.0]
DENSITY_Q = [20.0, 30.0, 50.0, 70.0, 100.0, 150.0, 200.0, 300.0]


# This class serves as a container for helper functions that can be
# passed to individual tests using the `helpers` fixture. This approach
# was required because fixture functions cannot take arguments.
class Helpers:
    @staticmethod
    def get_data_path(path, *paths):
        return os.path.join(DATA_DIR, path, *paths)

    @staticmethod
    def get_data_file(path, *paths, **kwargs):
        fullpath = os.path.join(DATA_DIR, path, *paths)
        return open(fullpath, **kwargs)

    @staticmethod
    def to_records(outputs):
        return [SweepRecord.from_output(out) for out in outputs]

    @staticmethod
    def strip_timestamp(text):
        """CSV text without its leading '# generated' line"""
        lines = text.splitlines(keepends=True)
        assert lines[0].startswith("# generated ")
        return "".join(lines[1:])


@pytest.fixture(scope="session")
def helpers():
    yield Helpers


@pytest.fixture(scope="session")
def config():
    yield CONFIG


@pytest.fixture(autouse=True)
def reset_config():
    """Every test starts from the default configuration"""
    yield
    CONFIG.reset()


@pytest.fixture(scope="session")
def ceff_outputs():
    yield {out.q_half_width: out for out in sweep_solve(CEFF_Q)}


@pytest.fixture(scope="session")
def richardson_records():
    yield {
        record.q_half_width: record
        for record in Helpers.to_records(sweep_solve(RICHARDSON_Q))
    }


@pytest.fixture(scope="session")
def density_records():
    yield Helpers.to_records(sweep_solve(DENSITY_Q))


@pytest.fixture(scope="session")
def coefficient_sweep():
    """The default coefficient grid solved with the uncapped rule"""
    yield coefficient_records(workers=2)
