# Utilidades comunes
