"""Relay-assisted wireless network model with caching.

Thin re-export of the compiled _core module. The extension lives inside this
package in installed builds and next to it on the import path in dev builds.
"""

try:
    from ._core import *  # noqa: F401,F403
    from ._core import __doc__  # noqa: F401
except ImportError:
    from _core import *  # noqa: F401,F403
    from _core import __doc__  # noqa: F401
