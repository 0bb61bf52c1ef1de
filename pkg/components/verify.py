"""
verify command: certify an arrangement file
"""

import logging

from artifacts import dumps, load_arrangement, save_arrangement
from higgledy_core import is_higgledy_piggledy
from utils.constants import EXIT_FAILURE, EXIT_OK, METHODS

logger = logging.getLogger(__name__)


def add_verify_parser(subparsers, parents=()):
    parser = subparsers.add_parser("verify", help="Certify the higgledy-piggledy property of an arrangement file",
                                   parents=list(parents))
    parser.add_argument("input", help="Arrangement JSON file")
    parser.add_argument("--method", choices=METHODS, default="auto")
    parser.add_argument("--out", help="Write the arrangement with the new certificate here")
    parser.set_defaults(handler=run_verify_command)


def run_verify_command(args):
    """Print the certificate; exit 0 iff the arrangement is higgledy-piggledy"""
    arr = load_arrangement(args.input, check=False)
    stored = arr.certificate
    certificate = is_higgledy_piggledy(arr, method=args.method, workers=args.workers)
    if stored is not None and stored.verdict != certificate.verdict:
        logger.warning("Stored verdict %s differs from the new verdict %s", stored.verdict, certificate.verdict)
    arr.certificate = certificate
    print(dumps(certificate.to_dict()))
    if args.out:
        save_arrangement(arr, args.out)
    logger.info("%s: %s by %s after %d candidates", args.input, certificate.verdict, certificate.method,
                certificate.scanned)
    return EXIT_OK if certificate.is_higgledy_piggledy else EXIT_FAILURE
