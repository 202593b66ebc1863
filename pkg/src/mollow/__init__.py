"""Dressed-state radiative corrections and the Mollow fluorescence spectrum.

The library is split by concern: ``constants`` and ``hydrogen`` provide
physical inputs, ``dressed`` and ``radiative`` the dressed-level algebra
and its QED corrections, ``spectrum`` and ``fitting`` the synthetic
spectra and their three-Lorentzian fit, ``feasibility`` the experimental
estimates.  ``scenario`` and ``cli`` drive it all from files.
"""

__version__ = "0.1.0"
