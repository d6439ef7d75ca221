#include <cstdio>
#include "shadowfold.h"
int main() { return sf_version() ? 0 : 1; }
