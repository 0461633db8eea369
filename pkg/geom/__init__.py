# Finite geometry over F2
