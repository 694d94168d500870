"""
Exception types raised by the storage formats, channel library and kernels
"""


class HermitianError(Exception):
    """Base class for every error raised by this project"""


class ResourceError(HermitianError, MemoryError):
    """Raised when a matrix buffer cannot be allocated"""


class DimensionError(HermitianError, ValueError):
    """Raised when operands disagree in qubit count or block dimension"""


class TargetError(HermitianError, ValueError):
    """Raised for duplicate, unsorted or out-of-range target qubits"""


class ChannelError(HermitianError, ValueError):
    """Raised when a Kraus set, probability or phase is not acceptable"""


class UnknownGateError(HermitianError, KeyError):
    """Raised for gate or operation names missing from the library"""


class StorageFormatError(HermitianError, ValueError):
    """Raised when a serialized operator cannot be decoded"""


class BadMagicError(StorageFormatError):
    pass


class VersionMismatchError(StorageFormatError):
    pass


class UnknownFormatError(StorageFormatError):
    pass


class TruncatedPayloadError(StorageFormatError):
    pass


class PayloadLengthError(StorageFormatError):
    """Payload carries more bytes than the header declares"""
