"""
Spectral toolkit for the power maps x^(k(q-1)) over F_{q^2}.
"""

from .field import *
from .spectra import *
from .theory import *
