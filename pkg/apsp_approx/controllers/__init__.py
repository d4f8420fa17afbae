from .apsp import ApspController
from .bench import BenchController
from .gen import GenController
from .oracle import OracleController
from .verify import VerifyController

__all__ = [
    "ApspController",
    "BenchController",
    "GenController",
    "OracleController",
    "VerifyController",
]
