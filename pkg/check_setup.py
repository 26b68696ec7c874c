#!/usr/bin/env python3
"""Verify proxgraph dependencies, configuration and fixtures."""

import sys
import os
import importlib

try:
    import yaml
except ImportError:
    yaml = None

def check_python():
    v = sys.version_info
    if v.major < 3 or (v.major == 3 and v.minor < 9):
        print(f"Python 3.9+ required; found {v.major}.{v.minor}")
        return False
    print(f"Python {v.major}.{v.minor}.{v.micro} OK")
    return True

def check_packages():
    # import name -> distribution name
    required = {
        'numpy': 'numpy', 'pandas': 'pandas', 'scipy': 'scipy', 'joblib': 'joblib',
        'yaml': 'PyYAML', 'tqdm': 'tqdm', 'networkx': 'networkx',
    }
    missing = []
    for module, dist in required.items():
        try:
            importlib.import_module(module)
            print(f"  {dist} OK")
        except ImportError:
            missing.append(dist)
            print(f"  {dist} MISSING")
    if missing:
        print("Install: pip install -r requirements.txt")
        return False
    return True

def check_config():
    if yaml is None:
        print("  PyYAML not installed; skip config check")
        return True
    from proxgraph.utils import merge_config, validate_config
    for name in ['config/proxgraph_config.yaml', 'config/sweep_config.yaml']:
        if not os.path.exists(name):
            print(f"  {name} missing")
            return False
        try:
            with open(name) as f:
                loaded = yaml.safe_load(f) or {}
            if name.endswith('proxgraph_config.yaml'):
                validate_config(merge_config(loaded))
            print(f"  {name} OK")
        except Exception as e:
            print(f"  {name} invalid: {e}")
            return False
    return True

def check_fixtures():
    from proxgraph.errors import ProxGraphError
    from proxgraph.io import load_graph, load_json, load_map, load_space
    from proxgraph.utils import get_file_list
    files = get_file_list('fixtures', ['.json'])
    if not files:
        print("  fixtures/ empty or missing")
        return False
    for path in files:
        try:
            raw = load_json(path)
            loader = load_map if 'map' in raw else load_space if 'points' in raw else load_graph
            loader(path)
            print(f"  {path} OK")
        except ProxGraphError as e:
            print(f"  {path} invalid: {e}")
            return False
    return True

def check_dirs():
    for d in ['proxgraph', 'config', 'fixtures', 'output']:
        if d == 'output' and not os.path.exists(d):
            os.makedirs(d, exist_ok=True)
            print(f"  {d}/ created")
        elif not os.path.isdir(d):
            print(f"  {d}/ missing")
            return False
        else:
            print(f"  {d}/ OK")
    return True

def main():
    print("proxgraph setup check")
    print("-" * 40)
    ok = check_python() and check_packages() and check_dirs() and check_config() and check_fixtures()
    print("-" * 40)
    print("OK - ready to run" if ok else "Fix issues above, then run: python run_proxgraph.py --help")
    sys.exit(0 if ok else 1)

if __name__ == "__main__":
    main()
