"""Three-valued verification outcome."""

from enum import Enum


class Verdict(Enum):
    ACCEPT = "accept"
    REJECT = "reject"
    BOT = "bot"

    def ok(self) -> bool:
        return self is Verdict.ACCEPT
