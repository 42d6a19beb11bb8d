"""
Numerical laboratory for vertical Morse-Bott flows, characteristic forms,
residues and the currents they converge to.
"""
__version__ = "0.1.0-dev"
