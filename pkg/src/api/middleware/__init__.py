# Middleware Package
