import argparse
import inspect
import os
import pathlib
from typing import Dict, Union

from pcomplex.config_registrar import (
    CLIConfig,
    Config,
)
from pcomplex.utils import change_to_snake_case, CLIColors, render_template


class Extension:
    """A subcommand.  Subclasses define flags, settle their config in ready() and work in main()."""

    def __init__(self):
        self.name = self.get_name()
        self.doc_string = inspect.getdoc(self.__class__)
        self.config: Config = None
        self.cli_config: CLIConfig = None
        self.template_location = self.get_extension_template_directory()

    @classmethod
    def get_name(cls):
        """Retrieve the name of the extension in snake_case."""
        return change_to_snake_case(cls.__name__)

    def main(self):
        """This method is the entry point to run a class based extension."""
        raise NotImplementedError(
            f"The extension ({CLIColors.build_value_string(self.get_name())}), has not implemented the main method"
        )

    def run_extension(self):
        """This runs the extension in its lifecyle hooks. ready() then main()."""
        self.ready()
        return self.main()

    def define_arguments(self, parser: argparse.ArgumentParser):
        """Hook to add this extension's command line flags to its parser."""
        ...

    def apply_arguments(self, args: argparse.Namespace):
        """Copy every flag the user gave on to the extension config."""
        if self.config is None:
            return
        for attr, value in vars(args).items():
            if value is not None and attr in vars(self.config):
                self.config.set_var(attr, value)

    def render_extension_template(
        self, template_name: str, render_args: Union[Dict, Config] = None
    ) -> str:
        """Render one template from the extension's template directory.

        If render_args is None then the extension config populates the template.
        """
        if render_args is None:
            render_args = self.config.to_dict()
        elif isinstance(render_args, Config):
            render_args = render_args.to_dict()
        return render_template(render_args, template_name, self.template_location)

    def get_extension_template_directory(self) -> str:
        """Retrieve the extension's template directory.

        Templates live in templates/{ext_name} next to the module defining the extension.
        """
        return os.path.join(
            pathlib.Path(inspect.getfile(self.__class__)).parent.resolve(),
            "templates",
            self.name,
        )

    # Application Lifecycle hook
    def ready(self):
        """Lifecycle hook, used to settle the config before the extension runs."""
        ...
