try:
    from ._mapcone import *  # noqa: F401,F403  (installed package layout)
    from ._mapcone import __version__  # noqa: F401
except ImportError:  # in-tree build: extension on PYTHONPATH
    from _mapcone import *  # noqa: F401,F403
    from _mapcone import __version__  # noqa: F401
