#pragma once

#include "obstruct/coefgroup.hpp"
#include "obstruct/cochain.hpp"
#include "obstruct/error.hpp"
#include "obstruct/fingroup.hpp"
#include "obstruct/linalg.hpp"
#include "obstruct/nerve.hpp"
#include "obstruct/obstruct.hpp"
#include "obstruct/whitney.hpp"
