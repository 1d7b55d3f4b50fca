# Bounds de concurrencia
