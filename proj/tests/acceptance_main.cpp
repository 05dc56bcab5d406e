#include "expsum/selftest.hpp"
#include <iostream>
int main() { return expsum::run_acceptance(std::cout) == 0 ? 0 : 1; }
