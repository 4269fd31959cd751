# App Services Package
