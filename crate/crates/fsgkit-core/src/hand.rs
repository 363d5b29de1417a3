pub struct HandError; pub struct HandModel; pub struct FingerChain; pub struct JointSpec; pub struct JointCombination;
