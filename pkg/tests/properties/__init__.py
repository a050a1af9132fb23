# Seeded randomized checks across whole pipelines; each module builds its corpus from a fixed seed.
