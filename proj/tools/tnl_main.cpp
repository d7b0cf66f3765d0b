#include <iostream>
int main(){ std::cout << "tnl\n"; }
