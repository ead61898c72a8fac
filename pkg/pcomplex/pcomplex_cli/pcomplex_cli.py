import sys

from pcomplex.cli import CLI


class PComplexCLI(CLI):
    """p-subgroup posets, their order complexes, fundamental groups and homology.

    Run an analysis with --group SPEC --prime P, or `verify` the acceptance suite.
    """

    ...


def main():
    sys.exit(PComplexCLI().main())


if __name__ == "__main__":
    main()
