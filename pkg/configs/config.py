# dotted-key YAML configuration, merged from defaults, a file, key/value opts and flags
import argparse
from ast import literal_eval
from os.path import dirname, join

import yaml

DEFAULT_CONFIG_FILE = join(dirname(__file__), 'default.yaml')


def _parse_dict(d, d_out=None, prefix=""):
    if d is None:
        return {}
    d_out = d_out if d_out is not None else {}
    for k, v in d.items():
        if isinstance(v, dict):
            _parse_dict(v, d_out, prefix=prefix + k + '.')
        else:
            if isinstance(v, str):
                try:
                    v = literal_eval(v)  # try to parse
                except (ValueError, SyntaxError):
                    pass  # v is really a string

            if isinstance(v, list):
                v = tuple(v)
            d_out[prefix + k] = v
    if prefix == "":
        return d_out


def load(fname):
    with open(fname, 'r') as fp:
        return _parse_dict(yaml.safe_load(fp))


def merge_from_config(config, config_merge):
    for k, v in config_merge.items():
        config[k] = v


def merge_from_file(config, fname):
    merge_from_config(config, load(fname))


def merge_from_list(config, list_merge):
    if len(list_merge) % 2 != 0:
        raise ValueError("opts must be key value pairs. Got {}".format(list(list_merge)))
    for key in list_merge[0::2]:
        if key.startswith('-'):
            raise ValueError("flags go before the input path. Got {!r} after it".format(key))
        if key not in config:
            raise ValueError("unknown config key {!r}".format(key))
    config_merge = _parse_dict(dict(zip(list_merge[0::2], list_merge[1::2])))
    merge_from_config(config, config_merge)


def default():
    return load(DEFAULT_CONFIG_FILE)


def state_price_schedule(config):
    return tuple(range(int(config['state_prices.max_exponent']) + 1))


def parse_args(parser: argparse.ArgumentParser, argv=None) -> dict:
    """Defaults, then ``--config``, then trailing opts; parsed flags fill the rest.

    Flags left at None do not override a configured value.
    """
    args = parser.parse_args(argv)
    config = default()
    config_path = getattr(args, 'config', None)

    if config_path is not None:
        merge_from_file(config, config_path)
    if getattr(args, 'opts', None):
        merge_from_list(config, args.opts)
    for k, v in vars(args).items():
        if v is not None or k not in config:
            config[k] = v
    return config
