"""Allow `python -m qcaclone` as an alias for the `qcaclone` script."""

from .cli import console_main

if __name__ == "__main__":
    console_main()
