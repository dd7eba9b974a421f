#include "cpe/verify.hpp"

#include <iostream>

int main() { return cpe::run_acceptance(std::cout) ? 0 : 1; }
