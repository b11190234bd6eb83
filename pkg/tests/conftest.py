from hypothesis import settings

# Monte Carlo-heavy suite: don't let hypothesis' per-example deadline flake
# on loaded CI machines.
settings.register_profile("botsig", deadline=None)
settings.load_profile("botsig")
