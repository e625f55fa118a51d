#pragma once

namespace partisan {

// Every data-parallel kernel in this library comes in two flavors: a serial
// reference implementation and an OpenMP one. Both must produce identical
// output; the test suite asserts this and bench/ compares their runtimes.
enum class Execution { Serial, Parallel };

}  // namespace partisan
