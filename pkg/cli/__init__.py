"""CLI tools -- the `bbx` command and estimator plugin discovery."""
