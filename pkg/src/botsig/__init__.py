"""botsig: abort-aware pseudorandomness, hash-based signatures, and games.

A simulation and measurement toolkit: a noisy pseudodeterministic generator
backend, vote/XOR layers that convert noise into a recognizable abort value,
a GGM-style tree PRF, abort-aware hash layers, the one-message-to-stateless
signature ladder with both correctness amplifiers, a parallel-repetition
decryption lifter, and a statistical harness that runs the associated
security experiments as executable games.
"""

from .bits import BOT, TOP, Bits, BotValue
from .tape import RandomTape

__all__ = ["BOT", "TOP", "Bits", "BotValue", "RandomTape"]

__version__ = "0.1.0"
