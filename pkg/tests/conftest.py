from hypothesis import settings

# Deterministic property tests: derandomize so repeated runs explore the
# same examples, and drop the per-example deadline since a few properties
# run numeric searches.
settings.register_profile("prevthresh", deadline=None, derandomize=True)
settings.load_profile("prevthresh")
