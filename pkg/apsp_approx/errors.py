"""Exceptions raised by the APSP toolkit."""


class ApspError(Exception):
    """Base class for every error the library raises"""


class GraphFormatError(ApspError):
    """A graph file does not follow the "n m" / "u v w" text format"""

    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


class ContractError(ApspError):
    """Input violates an algorithm's precondition"""


class DimensionError(ApspError):
    """Matrices are not conformable or sizes disagree"""


class BunchSizeError(ApspError):
    """Size bounds still violated after the resampling budget"""


class BlobFormatError(ApspError):
    """A persisted matrix or oracle blob has a bad header or version"""
