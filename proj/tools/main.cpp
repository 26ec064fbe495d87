#include "redsched/xcli.hpp"

int main(int argc, char** argv) { return redsched::run_main(argc, argv); }
