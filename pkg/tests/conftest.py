from hypothesis import settings

settings.register_profile("exactlu", deadline=None, max_examples=50)
settings.load_profile("exactlu")
