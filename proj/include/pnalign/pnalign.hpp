#pragma once

#include "pnalign/acyclic.hpp"
#include "pnalign/alignment.hpp"
#include "pnalign/classify.hpp"
#include "pnalign/cost.hpp"
#include "pnalign/dispatch.hpp"
#include "pnalign/error.hpp"
#include "pnalign/instance_gen.hpp"
#include "pnalign/io.hpp"
#include "pnalign/marking.hpp"
#include "pnalign/petri_net.hpp"
#include "pnalign/process_tree.hpp"
#include "pnalign/product.hpp"
#include "pnalign/reachability.hpp"
#include "pnalign/search.hpp"
#include "pnalign/shorten.hpp"
#include "pnalign/solvers.hpp"
#include "pnalign/turing.hpp"
