#pragma once

#include "unitri/autos.hpp"
#include "unitri/error.hpp"
#include "unitri/field_extension.hpp"
#include "unitri/free_product.hpp"
#include "unitri/hausdorff.hpp"
#include "unitri/linalg.hpp"
#include "unitri/matrix.hpp"
#include "unitri/nottingham.hpp"
#include "unitri/padic.hpp"
#include "unitri/partition.hpp"
#include "unitri/rational.hpp"
#include "unitri/ring.hpp"
#include "unitri/serialize.hpp"
