import json
from collections import OrderedDict


__all__ = ['load_json', 'save_json', 'dump_json']


def load_json(filename, encoding='utf-8'):
    with open(filename, 'r', encoding=encoding) as f:
        data = json.load(f, object_pairs_hook=OrderedDict)
    return data


def dump_json(data, indent=2, sort_keys=False) -> str:
    return json.dumps(data, indent=indent, separators=(',', ': '),
                      ensure_ascii=False, sort_keys=sort_keys)


def save_json(filename, data, encoding='utf-8', indent=2, sort_keys=False):
    """Writes `data` with a trailing newline; identical data gives identical bytes."""
    with open(filename, 'w', encoding=encoding) as f:
        f.write(dump_json(data, indent=indent, sort_keys=sort_keys))
        f.write('\n')
