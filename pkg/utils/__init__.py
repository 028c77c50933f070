"""
Engines for run-sorted permutations and merging-free partitions.

core and text_format hold the objects and their encodings; bijections,
counting, generation and series build on them; verification ties them
together as named property suites.
"""
