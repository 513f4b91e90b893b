"""Non-abelian cohomology of finite groups.

Modules: ``groups`` (finite groups and homomorphisms), ``actions`` (G-groups),
``cocycles`` (H0, H1, H2 and twisting), ``sequences`` (central extensions,
exact sequences, diagrams and five-lemma checks), ``filtration`` (radical
filtrations of unitriangular groups), ``complements`` (complements in
semidirect products) and ``cli``.
"""

__version__ = "0.1.0"
