# polytransform/commands/__init__.py
