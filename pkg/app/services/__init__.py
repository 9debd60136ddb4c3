# Domain services package
