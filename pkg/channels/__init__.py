from .kraus import (
    KrausSet,
    Physicality,
    TransferMatrix,
    ValidationReport,
    dual_channel,
    kraus_remix,
    permute_local_bits,
    transfer_from_kraus,
    unvec,
    validate_cptni,
    vec,
)
from .library import (
    CHANNEL_OPS,
    LIBRARY_OPS,
    NATIVE_GATES,
    ChannelKind,
    ChannelSpec,
    align,
    amplitude_damping,
    channel_from_name,
    dephasing,
    depolarising,
    native_gate,
    random_kraus_channel,
)

__all__ = [
    "KrausSet",
    "Physicality",
    "TransferMatrix",
    "ValidationReport",
    "dual_channel",
    "kraus_remix",
    "permute_local_bits",
    "transfer_from_kraus",
    "unvec",
    "validate_cptni",
    "vec",
    "CHANNEL_OPS",
    "LIBRARY_OPS",
    "NATIVE_GATES",
    "ChannelKind",
    "ChannelSpec",
    "align",
    "amplitude_damping",
    "channel_from_name",
    "dephasing",
    "depolarising",
    "native_gate",
    "random_kraus_channel",
]
