"""Exact chromatic polynomials and list-color functions of hypergraphs."""
