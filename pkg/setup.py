#!/usr/bin/env python3
"""
Bootstrap script for the square-class toolkit

Run `python setup.py` to check the interpreter and dependencies, or
`python setup.py --install` to install whatever is missing.
"""
import importlib.util
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent
REQUIRED_MODULES = {"sympy": "sympy", "numpy": "numpy", "pydantic": "pydantic", "dotenv": "python-dotenv", "pytest": "pytest"}


def missing_packages():
    return [package for module, package in REQUIRED_MODULES.items() if importlib.util.find_spec(module) is None]


def setup_environment(install: bool = False) -> int:
    print("🚀 Setting up square-class toolkit...")

    if sys.version_info < (3, 9):
        print("❌ Python 3.9+ is required")
        return 1
    print(f"✅ Python {sys.version_info.major}.{sys.version_info.minor} detected")

    env_file, env_example = ROOT / ".env", ROOT / ".env.example"
    if not env_file.exists() and env_example.exists():
        env_file.write_text(env_example.read_text())
        print("📝 .env created from .env.example - adjust the SQC_* bounds if needed")

    missing = missing_packages()
    if missing and install:
        print(f"📦 Installing {', '.join(missing)}...")
        result = subprocess.run([sys.executable, "-m", "pip", "install", "-r", str(ROOT / "requirements.txt")])
        if result.returncode != 0:
            print("❌ pip failed")
            return result.returncode
        missing = missing_packages()
    if missing:
        print(f"⚠️  Missing packages: {', '.join(missing)} (rerun with --install)")
        return 1
    print("✅ sympy, numpy, pydantic, python-dotenv and pytest available")

    print("\n🎉 Ready. Next steps:")
    print("1. python -m pytest")
    print("2. python cli.py selftest")
    print("3. python cli.py classify --model Qp:2 --subgroup 1,5")
    return 0


if __name__ == "__main__":
    if any(not arg.startswith("-") for arg in sys.argv[1:]):
        # Invoked by a build frontend (pip) with setuptools commands; metadata lives in pyproject.toml
        from setuptools import setup
        setup()
    else:
        sys.exit(setup_environment(install="--install" in sys.argv[1:]))
