"""Generalized stratified order structures (gso-structures).

The package is organised by concern:

- ``gsokit.graph``: finite relation and graph algebra, DOT emission.
- ``gsokit.core``: the universe sorts, the specification-level structure,
  validation reports and the graph decomposition of specifications.
- ``gsokit.order``: stratified orders, ranking structures, step sequences
  and the stratified-order extensions of a specification.
- ``gsokit.model``: finite models of the full theory, the axiom checker,
  classification and construction of models, the consistency witness.
- ``gsokit.psl``: a finite PSL-core fragment and its interpretation.
- ``gsokit.io`` and ``gsokit.cli``: model documents and the command line.
"""

__version__ = "0.1.0"
