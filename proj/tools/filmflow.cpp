#include "filmflow/runner.hpp"

int main(int argc, char** argv) { return filmflow::run(argc, argv); }
