import importlib
import inspect
import os
import traceback
from typing import Any, Dict

import pcomplex.settings as settings
from pcomplex.config_registrar import (
    CLIConfig,
    Config,
    config_registry,
)
from pcomplex.exceptions import NamingConventionException
from pcomplex.utils import (
    CLIColors,
    get_cli_parent_path,
    is_plural,
    load_yaml,
    make_singular,
    write_content,
)


def load_cli_settings(cli: type):
    """Loads the settings for the given CLI.

    Keys of cli_config.yml that name a setting override its default; `caps`
    is merged key by key.
    """
    mod = inspect.getmodule(cli)
    mod.settings = retrieve_cli_config_data(cli) or {}
    apply_settings(mod.settings)


def apply_settings(overrides: Dict):
    for key, value in overrides.items():
        if key == "caps" and isinstance(value, dict):
            settings.settings["caps"].update(value)
        elif key != "apps":
            settings.settings[key] = value


def load_apps_in_cli(cli: type):
    """Import every module of every app listed in the CLI's cli_config.yml."""
    cli_config_data = retrieve_cli_config_data(cli)
    package = inspect.getmodule(cli).__package__
    _load_apps(cli_config_data, get_cli_parent_path(cli), package)


def _load_modules(app, app_py_files, package: str = None):
    prefix = f"{package}.{app}" if package else app
    for app_py_file in sorted(app_py_files):
        importlib.import_module(f"{prefix}.{app_py_file.split('.')[0]}")


def _load_apps(cli_config_data: Dict, apps_dir: str, package: str = None):
    for app in cli_config_data["apps"]:
        app_path = os.path.join(apps_dir, app)
        _load_modules(app, get_app_modules(app_path), package)


def compile_app_configs_into_cli_config_from_data(cli_data: Dict, apps_dir: str):
    """Compile app configs in to main CLI config given the CLI."""
    return _compile_configs(apps_dir, cli_data["apps"])


def _compile_configs(apps_dir: str, app_list):
    compiled_config_data = {}
    for app in app_list:
        config_path = os.path.join(apps_dir, app, "app_config.yml")
        if not os.path.exists(config_path):
            continue
        data = load_yaml(config_path)
        if data:
            compiled_config_data.update(data)

    return compiled_config_data


def create_cli_config_from_cli(cli: type):
    load_cli_settings(cli)
    load_apps_in_cli(cli)
    cli_data = retrieve_cli_config_data(cli)
    return create_cli_config_from_cli_from_data(cli_data, get_cli_parent_path(cli))


def create_cli_config_from_cli_from_data(cli_config_yaml_data: Dict, apps_dir: str):
    """Build the CLIConfig object by instantiating all dicts in the app configs as config objects."""
    cli_data = compile_app_configs_into_cli_config_from_data(
        cli_config_yaml_data, apps_dir
    )
    cli_config: CLIConfig = config_registry["root"]()

    return instantiate_configs_in_dict(cli_data, cli_config)


def get_app_modules(app_dir: str):
    try:
        return [
            file
            for file in os.listdir(app_dir)
            if file.endswith(".py") and file != "__init__.py"
        ]
    except FileNotFoundError:
        traceback.print_exc()
        app_value = CLIColors.build_value_string(os.path.basename(app_dir))
        error_msg = CLIColors.build_error_string(f"The app {app_value} was not found.")
        print(error_msg)
        return []


def _new_config(name: str) -> Config:
    config_definition = config_registry.get(f"{name}{Config.CONFIG_SUFFIX}")
    return config_definition() if config_definition else Config()


def instantiate_configs_in_dict(config_dict: Dict, config_to_set: Config = None):
    def recursively_set_attrs(instance, attr: str, vals: Any):
        """Create basic configs and expose attributes for use.  Create a linked list of Config objects."""
        if isinstance(vals, dict):
            new_config = _new_config(attr)
            for att, val in vals.items():
                recursively_set_attrs(new_config, att, val)
            instance.set_var(attr, new_config)
        elif isinstance(vals, list):
            new_configs = []
            holds_mappings = bool(vals) and hasattr(vals[0], "items")
            if holds_mappings and not is_plural(attr):
                raise NamingConventionException(
                    f"{attr} holds a list of mappings and must be named in the plural"
                )
            # A plural key holding mappings becomes a list of its singular config.
            if holds_mappings:
                for item in vals:
                    new_config = _new_config(make_singular(attr))
                    for n_attr, n_value in item.items():
                        recursively_set_attrs(new_config, n_attr, n_value)
                    new_configs.append(new_config)

            instance.set_var(attr, new_configs or vals)
        else:
            instance.set_var(attr, vals)

    if not config_to_set:
        config_to_set = Config()

    for ext_name, ext_values in config_dict.items():
        config_instance = _new_config(ext_name)
        val_to_set = config_instance
        if isinstance(ext_values, dict):
            for ext_attr, ext_params in ext_values.items():
                recursively_set_attrs(config_instance, ext_attr, ext_params)
        elif isinstance(ext_values, list):
            val_to_set = []
            for item in ext_values:
                new_config = _new_config(make_singular(ext_name))
                if hasattr(item, "items"):
                    for n_attr, n_value in item.items():
                        recursively_set_attrs(new_config, n_attr, n_value)
                val_to_set.append(new_config)
        config_to_set.set_var(ext_name, val_to_set)

    return config_to_set


def get_cli_config_path(cli: type):
    """Retrieve the cli_config.yml path next to the CLI module."""
    cli_config_path = os.path.join(get_cli_parent_path(cli), "cli_config.yml")

    # The CLI must have a cli_config.yml
    if not os.path.exists(cli_config_path):
        write_content("apps: []\n", cli_config_path)
    return cli_config_path


def retrieve_cli_config_data(cli: type):
    return load_yaml(get_cli_config_path(cli))
