"""Quantum autoencoder toolkit: lossless encoders, photonic gate synthesis, training and discrimination."""

__version__ = "0.1.0"
