"""This file is responsible for collecting and registering the extensions for a CLI.

The only thing that is needed for the extension registrar is to use the
@register_extension decorator on the extension class inside an app module; the
app loader imports the modules of every app listed in cli_config.yml, and the
registration takes place on import.
"""
import functools
from typing import Dict, List, Type

from pcomplex.extension import Extension
from pcomplex.utils import CLIColors


class Registration:
    def __init__(self, handle: Type[Extension], default: bool = False):
        self.extension = handle()
        self.name = self.extension.get_name()
        self.default = default
        self.registration_doc = self.get_registration_doc()
        self.colored_registration_doc = CLIColors.build_doc_string(
            self.extension.doc_string
        )

    def get_registration_doc(self) -> str:
        """Get the first line of the extension's docstring."""
        doc_string = self.extension.doc_string or ""
        return doc_string.splitlines()[0] if doc_string else ""


def register_extension(ext: Type[Extension] = None, default: bool = False):
    """Decorate an Extension subclass to register it.

    This makes it immediately available as a subcommand.  The `default` extension
    also runs when no subcommand is given, with its flags on the root parser.
    """

    @functools.wraps(ext)
    def wrapper(ext):
        registration = Registration(ext, default)
        extension_registry[registration.name] = registration
        return ext

    return wrapper


extension_registry: Dict[str, Registration] = {}


def get_registrations() -> List[Registration]:
    """Retrieve the registrations present in the extension registry, by name."""
    return sorted(extension_registry.values(), key=lambda r: r.name)


def get_default_registration() -> Registration:
    return next((r for r in get_registrations() if r.default), None)
