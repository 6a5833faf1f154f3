#include <iostream>
int main() { std::cout << "weakforge\n"; return 0; }
