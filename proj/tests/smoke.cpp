#include "qcantor/scenarios.hpp"
#include <iostream>
int main(){ auto r = qcantor::run_scenario_suite(7); for (auto& s : r) std::cout << s.id << " " << (s.pass?"PASS":"FAIL") << " " << s.name << " (" << s.seconds << "s)\n"; }
