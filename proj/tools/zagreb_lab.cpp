#include "zagreb/cli.hpp"

int main(int argc, char** argv) { return zagreb::parse_and_dispatch(argc, argv); }
