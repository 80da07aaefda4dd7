#include "firmcas/cli.h"

int main(int argc, char** argv) { return firmcas::cli_main(argc, argv); }
