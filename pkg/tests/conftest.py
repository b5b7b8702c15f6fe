from hypothesis import settings

# numba JIT compilation on first engine use would trip hypothesis' default
# per-example deadline; examples themselves are fast.
settings.register_profile("semcom", deadline=None, max_examples=100)
settings.load_profile("semcom")
