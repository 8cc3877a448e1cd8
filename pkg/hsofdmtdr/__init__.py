"""
HsOfdmTdr - Reflectometria de banda estrecha sobre modems PLC HS-OFDM.

Simula como un modem de comunicaciones por linea electrica (PLM) obtiene
reflectogramas del cable al que esta conectado, reutilizando su propio
esquema Hermitian-symmetric OFDM, y como varios modems comparten el medio.
"""

__version__ = "0.1.0"
