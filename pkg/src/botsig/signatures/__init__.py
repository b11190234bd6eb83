"""Signature schemes: one-message, tree-based many-message, and amplifiers."""

from .amplify import AnyValidAmplifier, FirstValidAmplifier, IndexedSignature, SignatureVector
from .chain import (
    ChainLink,
    ChainSignature,
    StatefulParams,
    StatefulTreeScheme,
    StatelessParams,
    StatelessScheme,
    StatelessSecretKey,
    TreeMemory,
    vk_bit_len,
    vk_from_bits,
    vk_to_bits,
)
from .oms import (
    HashedOmsParams,
    HashedOmsScheme,
    HashedOmsSecretKey,
    HashedOmsSignature,
    OmsParams,
    OmsSecretKey,
    OmsSignature,
    OmsVerifyKey,
    OneMessageSigScheme,
)
from .verdict import Verdict

__all__ = [
    "AnyValidAmplifier",
    "ChainLink",
    "ChainSignature",
    "FirstValidAmplifier",
    "HashedOmsParams",
    "HashedOmsScheme",
    "HashedOmsSecretKey",
    "HashedOmsSignature",
    "IndexedSignature",
    "OmsParams",
    "OmsSecretKey",
    "OmsSignature",
    "OmsVerifyKey",
    "OneMessageSigScheme",
    "SignatureVector",
    "StatefulParams",
    "StatefulTreeScheme",
    "StatelessParams",
    "StatelessScheme",
    "StatelessSecretKey",
    "TreeMemory",
    "Verdict",
    "vk_bit_len",
    "vk_from_bits",
    "vk_to_bits",
]
